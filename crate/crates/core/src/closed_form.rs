//! Closed-form probabilities as exact rationals.
//!
//! Naming follows the three questions asked of `n` random sticks and a polygon size
//! `p + 1`: `pn_*` (no `p + 1` of them form a polygon), `pa_*` (every choice does) and
//! `pr_*` (a uniformly chosen `p + 1` do). When `n <= p` there is no subset of size
//! `p + 1`, and PN and PA are both 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constraints::{m_constants, s_constants};
use crate::error::{domain, Error, Result};
use crate::sequences::{t_sequence, StepFibTable};

/// A probability held as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(domain(format!("{value} is not a probability")));
        }
        // BigRational::new keeps the fraction reduced with a positive denominator
        Ok(Self(value))
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(domain("zero denominator"));
        }
        Self::new(BigRational::new(num.into(), den))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Self(BigRational::one() - &self.0)
    }

    /// Decimal expansion rounded half-up to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let scale: BigInt = num_traits::pow(BigInt::from(10), digits);
        let two = BigInt::from(2);
        let scaled: BigInt = self.numer() * &scale * &two + self.denom();
        let (rounded, _) = scaled.div_rem(&(self.denom() * &two));
        let (int_part, frac_part) = rounded.div_rem(&scale);
        if digits == 0 {
            return int_part.to_string();
        }
        format!(
            "{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits
        )
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

fn check_step(p: usize) -> Result<()> {
    if p < 2 {
        return Err(domain(format!("step count p must be at least 2, got {p}")));
    }
    Ok(())
}

/// True when `n <= p`, i.e. no `(p+1)`-subset exists.
pub fn is_vacuous(p: usize, n: usize) -> bool {
    n <= p
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn reciprocal_product<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigRational {
    let den: BigInt = values.into_iter().product();
    BigRational::new(BigInt::one(), den)
}

/// Pick-up sticks, uniform on `[0, 1]`: `Π 1/m_i`.
pub fn pn_pickup(p: usize, n: usize) -> Result<ExactProb> {
    check_step(p)?;
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let m = m_constants(p, n)?;
    let value = ExactProb::new(reciprocal_product(&m))?;
    debug_assert_eq!(Some(&value), pn_pickup_fib_product(p, n).ok().as_ref());
    Ok(value)
}

/// The same probability written directly over p-step Fibonacci numbers:
/// `Π_{i=1}^{n-p+2} 1/F_i · Π_{i=n-p+3}^{n} 1/(F_i - Σ_{j=1}^{i-n+p-2} j F_{i-j-1})`.
pub fn pn_pickup_fib_product(p: usize, n: usize) -> Result<ExactProb> {
    check_step(p)?;
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let table = StepFibTable::new(p)?;
    ExactProb::new(corrected_product(p, n, |k| table.fib(k))?)
}

fn corrected_product(
    p: usize,
    n: usize,
    term: impl Fn(i64) -> Result<BigInt>,
) -> Result<BigRational> {
    let (p, n) = (p as i64, n as i64);
    let mut den = BigInt::one();
    for i in 1..=n {
        let mut factor = term(i)?;
        for j in 1..=(i - n + p - 2) {
            factor -= BigInt::from(j) * term(i - j - 1)?;
        }
        den *= factor;
    }
    Ok(BigRational::new(BigInt::one(), den))
}

/// Four-sided case over Tribonacci numbers: `1/(T_n - T_{n-2}) · Π_{i=1}^{n-1} 1/T_i`.
pub fn pn_pickup_quadrilateral(n: usize) -> Result<ExactProb> {
    if n < 4 {
        return Err(domain(format!("quadrilateral form needs n >= 4, got {n}")));
    }
    let table = StepFibTable::new(3)?;
    let n = n as i64;
    let mut den = table.fib(n)? - table.fib(n - 2)?;
    for i in 1..n {
        den *= table.fib(i)?;
    }
    ExactProb::new(BigRational::new(BigInt::one(), den))
}

/// Pick-up sticks uniform on `[a, 1]`: `(1 - m_1 a)^n / (1 - a)^n · Π 1/m_i`, and 0 once
/// `a >= 1/m_1`.
pub fn pn_pickup_truncated(p: usize, n: usize, a: &BigRational) -> Result<ExactProb> {
    check_step(p)?;
    if a.is_negative() || a >= &BigRational::one() {
        return Err(domain(format!(
            "truncation point must lie in [0, 1), got {a}"
        )));
    }
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let m = m_constants(p, n)?;
    let slack = BigRational::one() - BigRational::from_integer(m[0].clone()) * a;
    if !slack.is_positive() {
        return Ok(ExactProb::zero());
    }
    let ratio = slack / (BigRational::one() - a);
    ExactProb::new(num_traits::pow(ratio, n) * reciprocal_product(&m))
}

/// Broken stick: `n! · Π_{i=1}^{n-1} 1/s_i`.
pub fn pn_broken(p: usize, n: usize) -> Result<ExactProb> {
    check_step(p)?;
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let s = s_constants(p, n)?;
    ExactProb::new(BigRational::from_integer(factorial(n)) * reciprocal_product(&s))
}

/// Pick-up sticks with exponential lengths (any rate):
/// `n! · Π_{k=1}^{n-p+2} 1/t_k · Π_{k=n-p+3}^{n} 1/(t_k - Σ_{j=1}^{p+k-n-2} j t_{k-j-1})`.
pub fn pn_exponential(p: usize, n: usize) -> Result<ExactProb> {
    check_step(p)?;
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let t = t_sequence(p, n as i64)?;
    let value = corrected_product(p, n, |k| Ok(t[k as usize - 1].clone()))?;
    ExactProb::new(BigRational::from_integer(factorial(n)) * value)
}

/// Every `p + 1` of `n` uniform sticks form a polygon; closed forms exist for
/// `p ∈ {2, 3}` only.
pub fn pa_pickup(p: usize, n: usize) -> Result<ExactProb> {
    check_step(p)?;
    if !(2..=3).contains(&p) {
        return Err(Error::Unsupported(format!(
            "no closed form for PA with p = {p}; estimate it with Monte Carlo instead"
        )));
    }
    if is_vacuous(p, n) {
        return Ok(ExactProb::one());
    }
    let half = BigRational::new(1.into(), 2.into());
    let value = if p == 2 {
        num_traits::pow(half, n - 2)
    } else {
        let two_thirds = BigRational::new(2.into(), 3.into());
        BigRational::from_integer(2.into())
            * (num_traits::pow(two_thirds, n - 3) - num_traits::pow(half, n - 2))
    };
    ExactProb::new(value)
}

/// A uniformly chosen `p + 1` of the sticks form a polygon: `1 - 1/p!`, for any `n`.
pub fn pr_pickup(p: usize) -> Result<ExactProb> {
    check_step(p)?;
    ExactProb::new(BigRational::one() - BigRational::new(BigInt::one(), factorial(p)))
}
