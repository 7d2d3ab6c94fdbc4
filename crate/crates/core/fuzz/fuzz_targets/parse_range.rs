#![no_main]
use libfuzzer_sys::fuzz_target;
use sticks::parse::parse_range;

fuzz_target!(|data: &str| {
    if let Ok(r) = parse_range(data) {
        assert!(r.start() <= r.end());
    }
});
