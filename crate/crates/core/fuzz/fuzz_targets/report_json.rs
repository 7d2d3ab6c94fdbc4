#![no_main]
use libfuzzer_sys::fuzz_target;
use sticks::report::{from_json, to_json, ConstantsReport, Report, VerifyReport};

fuzz_target!(|data: &str| {
    if let Ok(r) = from_json::<Report>(data) {
        if let Some(result) = &r.result {
            let _ = result.prob();
        }
        // NaN or infinite floats cannot be written back as JSON
        let finite = r.mc.as_ref().map_or(true, |mc| {
            mc.p_hat.is_finite()
                && mc.std_err.is_finite()
                && mc.z_vs_exact.map_or(true, f64::is_finite)
        });
        if finite {
            assert_eq!(from_json::<Report>(&to_json(&r)).unwrap(), r);
        }
    }
    if let Ok(r) = from_json::<VerifyReport>(data) {
        assert_eq!(from_json::<VerifyReport>(&to_json(&r)).unwrap(), r);
    }
    if let Ok(r) = from_json::<ConstantsReport>(data) {
        assert_eq!(from_json::<ConstantsReport>(&to_json(&r)).unwrap(), r);
    }
});
