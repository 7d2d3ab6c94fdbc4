#![no_main]
use libfuzzer_sys::fuzz_target;
use sticks::parse::{format_rational, parse_rational};

fuzz_target!(|data: &str| {
    if let Ok(q) = parse_rational(data) {
        // canonical text must parse back to the same value
        assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
});
