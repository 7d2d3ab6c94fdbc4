//! Text formats that cross the command-line boundary: exact rationals as `num/den`
//! and inclusive integer ranges as `lo:hi`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Inputs longer than this are rejected before any big-integer parsing.
pub const MAX_INPUT_LEN: usize = 4096;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(format!("{s:?} is not an integer")));
    }
    s.parse::<BigInt>()
        .map_err(|e| parse_err(format!("{s:?}: {e}")))
}

/// Parses `"num/den"` or a bare integer into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    if s.len() > MAX_INPUT_LEN {
        return Err(parse_err("rational literal too long"));
    }
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n.trim())?, parse_int(d.trim())?),
        None => (parse_int(s)?, BigInt::from(1)),
    };
    if den.is_zero() {
        return Err(parse_err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `"num/den"` (always with a denominator).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest `f64`, for handing an exact parameter to the sampler.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"lo:hi"` (inclusive) or a single value `"k"` meaning `k:k`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    if s.len() > MAX_INPUT_LEN {
        return Err(parse_err("range literal too long"));
    }
    let one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| parse_err(format!("{t:?}: {e}")))
    };
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (one(lo)?, one(hi)?),
        None => {
            let v = one(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(parse_err(format!("empty range {lo}:{hi}")));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/10").unwrap(), q(1, 10));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), q(1, 2));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-1/3").unwrap(), q(-1, 3));
        for bad in ["", "1/", "/2", "1/0", "a/b", "1.5", "1//2", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert_eq!(format_rational(&q(6, 8)), "3/4");
        assert_eq!(format_rational(&q(2, 1)), "2/1");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2:4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        for bad in ["", "4:2", "a:3", "1:", ":1", "-1:2", "1:2:3"] {
            assert!(parse_range(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn rational_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let q = BigRational::new(n.into(), d.into());
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }

        #[test]
        fn never_panics(s in ".{0,40}") {
            let _ = parse_rational(&s);
            let _ = parse_range(&s);
        }
    }
}
