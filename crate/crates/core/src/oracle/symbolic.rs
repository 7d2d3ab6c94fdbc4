//! Iterated exact integration over the no-polygon region of pick-up sticks.
//!
//! For sorted uniform lengths the probability is `n!` times the volume of
//! `{min_i(l_1..l_{i-1}) <= l_i <= max_i(l_1..l_{i-1})}`. The integrand stays polynomial
//! because every bound is linear, so integrating `l_n`, then `l_{n-1}`, down to `l_1`
//! is exact. The bounds come from [`min_length_form`] and [`max_length_form`]; neither
//! the closed-form `m_i` nor the Fibonacci product formula is consulted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::MultiPoly;
use crate::closed_form::ExactProb;
use crate::constraints::{max_length_form, min_length_form, Model};
use crate::error::{domain, Error, Result};

pub const DEFAULT_MAX_STICKS: usize = 8;

/// Symbolic integrator with a size guard on the number of sticks.
#[derive(Debug, Clone, Copy)]
pub struct SymbolicIntegrator {
    pub max_sticks: usize,
}

impl Default for SymbolicIntegrator {
    fn default() -> Self {
        Self {
            max_sticks: DEFAULT_MAX_STICKS,
        }
    }
}

struct Bounds {
    lower: Vec<MultiPoly>,
    upper: Vec<MultiPoly>,
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n).map(BigInt::from).product())
}

impl SymbolicIntegrator {
    pub fn new(max_sticks: usize) -> Self {
        Self { max_sticks }
    }

    fn check(&self, p: usize, n: usize) -> Result<()> {
        if p < 2 {
            return Err(domain(format!("step count p must be at least 2, got {p}")));
        }
        if n < p + 1 {
            return Err(domain(format!(
                "symbolic integration needs n >= p + 1, got p={p} n={n}"
            )));
        }
        if n > self.max_sticks {
            return Err(Error::Resource(format!(
                "n = {n} exceeds the symbolic size guard of {}",
                self.max_sticks
            )));
        }
        Ok(())
    }

    fn bounds(p: usize, n: usize) -> Result<Bounds> {
        let mut lower = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for i in 1..=n {
            lower.push(MultiPoly::from_form(n, &min_length_form(p, i)?));
            let max = if i == n {
                MultiPoly::one(n)
            } else {
                let (den, f) = max_length_form(p, n, i, Model::Pickup)?;
                let inv = BigRational::new(BigInt::one(), den);
                let numer = MultiPoly::one(n).sub(&MultiPoly::from_form(n, &f));
                numer.scale(&inv)
            };
            upper.push(max);
        }
        Ok(Bounds { lower, upper })
    }

    /// Integrands after integrating out `l_n`, then `l_n, l_{n-1}`, and so on.
    ///
    /// Entry `k` is a polynomial in `l_1 .. l_{n-k-1}`; the last entry is the bare
    /// volume as a constant.
    pub fn trace(&self, p: usize, n: usize) -> Result<Vec<MultiPoly>> {
        self.check(p, n)?;
        let bounds = Self::bounds(p, n)?;
        Ok(integrate_down(&bounds, n, 0))
    }

    /// Upper bound of `l_i` as a polynomial, for checking the integrands.
    pub fn upper_bound(&self, p: usize, n: usize, i: usize) -> Result<MultiPoly> {
        self.check(p, n)?;
        if i < 1 || i > n {
            return Err(domain(format!("stick index {i} outside 1..={n}")));
        }
        Ok(Self::bounds(p, n)?.upper.swap_remove(i - 1))
    }

    pub fn pn_pickup(&self, p: usize, n: usize) -> Result<ExactProb> {
        let trace = self.trace(p, n)?;
        let volume = trace.last().expect("n >= 1").constant_term();
        ExactProb::new(factorial(n) * volume)
    }

    /// Uniform on `[a, 1]`: the full region minus the slab `l_1 < a`, rescaled by the
    /// density `1 / (1 - a)^n`.
    pub fn pn_truncated(&self, p: usize, n: usize, a: &BigRational) -> Result<ExactProb> {
        self.check(p, n)?;
        if a.is_negative() || a >= &BigRational::one() {
            return Err(domain(format!(
                "truncation point must lie in [0, 1), got {a}"
            )));
        }
        let bounds = Self::bounds(p, n)?;
        let l1_max = bounds.upper[0].constant_term();
        if a >= &l1_max {
            return Ok(ExactProb::zero());
        }
        // integrand in l_1 alone
        let inner = integrate_down(&bounds, n, 1)
            .pop()
            .unwrap_or_else(|| MultiPoly::one(n));
        let zero = MultiPoly::zero(n);
        let whole = inner.integrate(0, &zero, &bounds.upper[0]).constant_term();
        let slab = inner
            .integrate(0, &zero, &MultiPoly::constant(n, a.clone()))
            .constant_term();
        let density = num_traits::pow(BigRational::one() - a, n);
        ExactProb::new(factorial(n) * (whole - slab) / density)
    }
}

/// Integrates `l_n` down to `l_{stop+1}` and returns every intermediate integrand.
fn integrate_down(bounds: &Bounds, n: usize, stop: usize) -> Vec<MultiPoly> {
    let mut integrand = MultiPoly::one(n);
    let mut trace = Vec::with_capacity(n - stop);
    for var in (stop..n).rev() {
        integrand = integrand.integrate(var, &bounds.lower[var], &bounds.upper[var]);
        trace.push(integrand.clone());
    }
    trace
}

/// [`SymbolicIntegrator::pn_pickup`] with the default size guard.
pub fn symbolic_pn_pickup(p: usize, n: usize) -> Result<ExactProb> {
    SymbolicIntegrator::default().pn_pickup(p, n)
}

/// [`SymbolicIntegrator::pn_truncated`] with the default size guard.
pub fn symbolic_pn_truncated(p: usize, n: usize, a: &BigRational) -> Result<ExactProb> {
    SymbolicIntegrator::default().pn_truncated(p, n, a)
}

/// Substitutes `l_var := bound` and reports whether the result vanishes identically.
pub fn vanishes_at(poly: &MultiPoly, var: usize, bound: &MultiPoly) -> bool {
    poly.substitute(var, bound).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(n: i64, d: i64) -> ExactProb {
        ExactProb::from_ratio(n, d).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(symbolic_pn_pickup(2, 3).unwrap(), prob(1, 2));
        assert_eq!(symbolic_pn_pickup(2, 5).unwrap(), prob(1, 30));
        assert_eq!(symbolic_pn_pickup(3, 5).unwrap(), prob(1, 40));
    }

    #[test]
    fn truncated_cases() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(symbolic_pn_truncated(2, 3, &q(0, 1)).unwrap(), prob(1, 2));
        assert_eq!(
            symbolic_pn_truncated(2, 3, &q(1, 2)).unwrap(),
            ExactProb::zero()
        );
        assert_eq!(symbolic_pn_truncated(2, 3, &q(1, 4)).unwrap(), prob(4, 27));
        assert!(symbolic_pn_truncated(2, 3, &q(1, 1)).is_err());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(symbolic_pn_pickup(2, 9), Err(Error::Resource(_))));
        assert!(SymbolicIntegrator::new(9).pn_pickup(2, 9).is_ok());
        assert!(matches!(symbolic_pn_pickup(3, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn integrands_vanish_at_upper_bound() {
        let integrator = SymbolicIntegrator::default();
        for (p, n) in [(2, 5), (3, 6), (4, 6)] {
            let trace = integrator.trace(p, n).unwrap();
            // trace[k] has l_n .. l_{n-k} integrated out; next variable is l_{n-k-1}
            for (k, poly) in trace.iter().enumerate().take(n - 1) {
                let j = n - k - 1;
                let bound = integrator.upper_bound(p, n, j).unwrap();
                assert!(vanishes_at(poly, j - 1, &bound), "p={p} n={n} l_{j}");
            }
        }
    }
}
