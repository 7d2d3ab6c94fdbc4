//! Iterates `R^{l+1} = A_p R^l` from `R^1 = (1, .., 1)`, where
//!
//! ```text
//!       | 1 0 .. 0 p-1 |
//!       | 1 0 .. 0 p-2 |
//! A_p = | 0 1 .. 0 p-3 |
//!       | :  :    :  : |
//!       | 0 0 .. 1  0  |
//! ```
//!
//! The last coordinate of `R^l` is `F_l^p`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Result};

/// `(R_1^l, .., R_p^l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RVector(pub Vec<BigInt>);

impl RVector {
    pub fn ones(p: usize) -> Self {
        Self(vec![BigInt::one(); p])
    }

    /// `R_i` with 1-based `i`.
    pub fn entry(&self, i: usize) -> &BigInt {
        &self.0[i - 1]
    }

    pub fn apply(&self) -> Self {
        let p = self.0.len();
        let last = &self.0[p - 1];
        let mut next = Vec::with_capacity(p);
        next.push(&self.0[0] + last * BigInt::from(p - 1));
        for i in 2..=p {
            next.push(&self.0[i - 2] + last * BigInt::from(p - i));
        }
        Self(next)
    }
}

pub fn r_vector(p: usize, l: usize) -> Result<RVector> {
    if p < 2 {
        return Err(domain(format!("step count p must be at least 2, got {p}")));
    }
    if l < 1 {
        return Err(domain("R^l is defined for l >= 1"));
    }
    let mut r = RVector::ones(p);
    for _ in 1..l {
        r = r.apply();
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::StepFibTable;

    #[test]
    fn examples() {
        assert_eq!(r_vector(2, 1).unwrap(), RVector::ones(2));
        let r = r_vector(3, 2).unwrap();
        assert_eq!(r.entry(3), &BigInt::from(1));
        assert_eq!(r.0, vec![BigInt::from(3), BigInt::from(2), BigInt::from(1)]);
        assert_eq!(r_vector(2, 6).unwrap().entry(2), &BigInt::from(8));
        assert!(r_vector(1, 3).is_err());
        assert!(r_vector(2, 0).is_err());
    }

    #[test]
    fn closed_forms() {
        for p in 2..=6usize {
            let table = StepFibTable::new(p).unwrap();
            let f = |k: usize| table.fib(k as i64).unwrap();
            for l in 1..=30 {
                let r = r_vector(p, l).unwrap();
                assert_eq!(r.entry(p), &f(l));
                assert_eq!(r.entry(p - 1), &f(l + 1));
                for i in 1..=p.saturating_sub(2) {
                    let corr: BigInt = (1..=p - i - 1)
                        .map(|j| BigInt::from(p - i - j) * f(l + j - 1))
                        .sum();
                    assert_eq!(r.entry(i), &(f(l + p - i) - corr), "p={p} l={l} i={i}");
                }
            }
        }
    }
}
