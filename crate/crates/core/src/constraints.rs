//! Length constraints on sorted sticks that cannot form a `(p+1)`-gon.
//!
//! With the lengths sorted, `l_1 <= ... <= l_n`, "no `p + 1` sticks form a polygon" is the
//! same as every window of `p` consecutive lengths summing to at most the next length.
//! Fixing a prefix `l_1 .. l_{i-1}` this pins `l_i` to an interval
//! `[min_i, (1 - f_i) / m_i]`, where `min_i` and `f_i` are integer linear forms in the
//! prefix and `m_i` is a positive integer. For the broken stick the upper bound has the
//! same shape with constants `s_i` and forms `g_i`.
//!
//! The constants are available three ways: the closed forms in [`m_constants`] and
//! [`s_constants`], the coefficient vectors of [`e_vector`] propagated through the
//! minimum-length chain ([`max_length_form`]), and the rows of the inverse change of
//! variables `y_i = l_i - min_i` ([`m_constants_via_jacobian`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sequences::StepFibTable;

/// Which terminal constraint closes the chain of minimum lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Independent lengths bounded by 1: `l_n <= 1`.
    Pickup,
    /// Pieces of a unit stick: `l_n = 1 - (l_1 + ... + l_{n-1})`.
    Broken,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Pickup => "pickup",
            Model::Broken => "broken",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pickup" => Ok(Model::Pickup),
            "broken" => Ok(Model::Broken),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

/// `constant + Σ coeffs[j] * l_{j+1}` over the first `arity` sorted lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
    constant: BigRational,
}

impl LinearForm {
    pub fn zero(arity: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); arity],
            constant: BigRational::zero(),
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self {
            coeffs,
            constant: BigRational::zero(),
        }
    }

    pub fn with_constant(mut self, constant: BigRational) -> Self {
        self.constant = constant;
        self
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `l_var` (1-based).
    pub fn coeff(&self, var: usize) -> &BigInt {
        &self.coeffs[var - 1]
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, lengths: &[BigRational]) -> Result<BigRational> {
        if lengths.len() != self.arity() {
            return Err(domain(format!(
                "form reads {} lengths, got {}",
                self.arity(),
                lengths.len()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(lengths)
            .fold(self.constant.clone(), |acc, (c, l)| {
                acc + BigRational::from_integer(c.clone()) * l
            }))
    }
}

impl fmt::Display for LinearForm {
    /// Terms are printed from the highest index down, e.g. `l_4 + l_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "l_{}", j + 1)?;
            } else {
                write!(f, "{mag}*l_{}", j + 1)?;
            }
            first = false;
        }
        if !self.constant.is_zero() || first {
            if first {
                write!(f, "{}", self.constant)?;
            } else {
                let sign = if self.constant.is_negative() {
                    "-"
                } else {
                    "+"
                };
                write!(f, " {sign} {}", self.constant.abs())?;
            }
        }
        Ok(())
    }
}

fn check_step(p: usize) -> Result<()> {
    if p < 2 {
        return Err(domain(format!("step count p must be at least 2, got {p}")));
    }
    Ok(())
}

fn check_system(p: usize, n: usize) -> Result<()> {
    check_step(p)?;
    if n < p + 1 {
        return Err(domain(format!(
            "constraint system needs n >= p + 1, got p={p} n={n}"
        )));
    }
    Ok(())
}

/// Lower bound on `l_i` as a form over `l_1 .. l_{i-1}`.
pub fn min_length_form(p: usize, i: usize) -> Result<LinearForm> {
    check_step(p)?;
    if i < 1 {
        return Err(domain("stick index starts at 1"));
    }
    let mut form = LinearForm::zero(i - 1);
    if i == 1 {
        return Ok(form);
    }
    if i < p + 1 {
        form.coeffs[i - 2] = BigInt::one();
    } else {
        for j in 1..=p {
            form.coeffs[i - j - 1] = BigInt::one();
        }
    }
    Ok(form)
}

/// Coefficient vectors `e_k` of width `width` for `k = 2 - width ..= max_k`.
///
/// Position `j` of `e_k` is the coefficient of `l_{i-j}` (0-based `j`) in the smallest
/// admissible `l_{i+k-1}` once `l_1 .. l_i` are fixed, where `i = width <= p` or
/// `width = p <= i`. Sticks `i+1 ..= p` only need to exceed `l_i`; from `p + 1` on every
/// minimum is the sum of the previous `p`.
struct EVectors {
    width: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl EVectors {
    fn build(p: usize, width: usize, max_k: i64) -> Self {
        let low = 2 - width as i64;
        let plateau_end = (p + 1 - width) as i64;
        let mut vectors: Vec<Vec<BigInt>> = Vec::new();
        for k in low..=max_k.max(1) {
            let v = if k <= 1 {
                let mut unit = vec![BigInt::zero(); width];
                unit[(2 - k) as usize - 1] = BigInt::one();
                unit
            } else if k <= plateau_end {
                let mut unit = vec![BigInt::zero(); width];
                unit[0] = BigInt::one();
                unit
            } else {
                let idx = (k - low) as usize;
                let mut acc = vec![BigInt::zero(); width];
                for prev in &vectors[idx - p..idx] {
                    for (a, b) in acc.iter_mut().zip(prev) {
                        *a += b;
                    }
                }
                acc
            };
            vectors.push(v);
        }
        Self { width, vectors }
    }

    fn get(&self, k: i64) -> &[BigInt] {
        &self.vectors[(k - (2 - self.width as i64)) as usize]
    }
}

/// `e_k^{(p)}`: unit vectors for `k = 2-p ..= 1`, then `e_k = e_{k-1} + ... + e_{k-p}`.
///
/// The first component of `e_k` is `F_k^p`.
pub fn e_vector(p: usize, k: i64) -> Result<Vec<BigInt>> {
    check_step(p)?;
    if k < 2 - p as i64 {
        return Err(domain(format!("e_k needs k >= {}, got {k}", 2 - p as i64)));
    }
    Ok(EVectors::build(p, p, k).get(k).to_vec())
}

/// Truncated vectors `e_k^{(i)}` of width `i < p`, used for the first `p - 1` sticks.
///
/// Units for `k = 2-i ..= 1`, `(1, 0, ..)` for `k = 2 ..= p+1-i`, then the p-term
/// recurrence.
pub fn truncated_e_vector(p: usize, i: usize, k: i64) -> Result<Vec<BigInt>> {
    check_step(p)?;
    if i < 1 || i >= p {
        return Err(domain(format!(
            "truncated vectors need 1 <= i < p, got i={i}"
        )));
    }
    if k < 2 - i as i64 {
        return Err(domain(format!(
            "e_k^(i) needs k >= {}, got {k}",
            2 - i as i64
        )));
    }
    Ok(EVectors::build(p, i, k).get(k).to_vec())
}

/// Upper bound on `l_i` as `(1 - form(l_1 .. l_{i-1})) / denominator`, for `1 <= i < n`.
///
/// Fixing `l_1 .. l_i` and setting every later stick to its minimum, the vectors of
/// [`e_vector`] (or [`truncated_e_vector`] below `i = p`) give each later length as a form
/// over the window `(l_i, l_{i-1}, ..)`. The terminal constraint (`l_n <= 1`, or
/// `Σ l = 1` for the broken stick) then bounds `l_i`.
pub fn max_length_form(p: usize, n: usize, i: usize, model: Model) -> Result<(BigInt, LinearForm)> {
    check_system(p, n)?;
    if i < 1 || i >= n {
        return Err(domain(format!(
            "max_length_form needs 1 <= i <= n-1, got i={i} n={n}"
        )));
    }
    let width = i.min(p);
    let reach = (n - i + 1) as i64;
    let ev = EVectors::build(p, width, reach);

    let window = match model {
        Model::Pickup => ev.get(reach).to_vec(),
        Model::Broken => {
            // l_{i-width+1} ..= l_{n-1} plus the minimal l_n
            let mut acc = ev.get(reach).to_vec();
            for k in (2 - width as i64)..reach {
                for (a, b) in acc.iter_mut().zip(ev.get(k)) {
                    *a += b;
                }
            }
            acc
        }
    };

    let mut form = LinearForm::zero(i - 1);
    for (j, c) in window.iter().enumerate().skip(1) {
        form.coeffs[i - j - 1] = c.clone();
    }
    if model == Model::Broken {
        // sticks left of the window enter the total length once each
        for coeff in form.coeffs.iter_mut().take(i - width) {
            *coeff += 1;
        }
    }
    Ok((window[0].clone(), form))
}

/// `m_1 .. m_n`: `F_{n-i+1} - Σ_{j=1}^{p-i-1} j F_{n-i-j}` for `i <= p-2`, else
/// `F_{n-i+1}`.
pub fn m_constants(p: usize, n: usize) -> Result<Vec<BigInt>> {
    check_system(p, n)?;
    let table = StepFibTable::new(p)?;
    corrected_constants(p, n, n, |k| table.fib(k))
}

/// `s_1 .. s_{n-1}`, the broken-stick analogue of [`m_constants`] with `F` replaced by
/// its prefix sums. `s_n = 1` is implicit.
pub fn s_constants(p: usize, n: usize) -> Result<Vec<BigInt>> {
    check_system(p, n)?;
    let table = StepFibTable::new(p)?;
    corrected_constants(p, n, n - 1, |k| table.prefix_sum(k))
}

fn corrected_constants(
    p: usize,
    n: usize,
    count: usize,
    term: impl Fn(i64) -> Result<BigInt>,
) -> Result<Vec<BigInt>> {
    let (n, p) = (n as i64, p as i64);
    (1..=count as i64)
        .map(|i| {
            let mut value = term(n - i + 1)?;
            for j in 1..=(p - i - 1) {
                value -= BigInt::from(j) * term(n - i - j)?;
            }
            Ok(value)
        })
        .collect()
}

/// Last row of the inverse of the change of variables `y_i = l_i - min_i`.
///
/// Rows `J_1 .. J_p` are leading-ones vectors, after which
/// `J_i = J_{i-1} + ... + J_{i-p} + e_i`; since `l_n = J_n · y`, `J_n = (m_1, .., m_n)`.
pub fn m_constants_via_jacobian(p: usize, n: usize) -> Result<Vec<BigInt>> {
    check_system(p, n)?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 1..=n {
        let row = if i <= p {
            (0..n)
                .map(|c| if c < i { BigInt::one() } else { BigInt::zero() })
                .collect()
        } else {
            let mut acc = vec![BigInt::zero(); n];
            for prev in &rows[i - 1 - p..i - 1] {
                for (a, b) in acc.iter_mut().zip(prev) {
                    *a += b;
                }
            }
            acc[i - 1] += 1;
            acc
        };
        rows.push(row);
    }
    Ok(rows.pop().expect("n >= 1"))
}

/// All bounds of one `(p, n, model)` system, indexed from stick 1.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub p: usize,
    pub n: usize,
    pub model: Model,
    pub min_forms: Vec<LinearForm>,
    pub max_denominators: Vec<BigInt>,
    pub max_numerator_forms: Vec<LinearForm>,
}

impl ConstraintSystem {
    /// Built from the vector route; the last stick gets `1 / 1` with an empty form.
    pub fn build(p: usize, n: usize, model: Model) -> Result<Self> {
        check_system(p, n)?;
        let min_forms = (1..=n)
            .map(|i| min_length_form(p, i))
            .collect::<Result<Vec<_>>>()?;
        let mut max_denominators = Vec::with_capacity(n);
        let mut max_numerator_forms = Vec::with_capacity(n);
        for i in 1..n {
            let (d, f) = max_length_form(p, n, i, model)?;
            max_denominators.push(d);
            max_numerator_forms.push(f);
        }
        max_denominators.push(BigInt::one());
        max_numerator_forms.push(LinearForm::zero(n - 1));
        Ok(Self {
            p,
            n,
            model,
            min_forms,
            max_denominators,
            max_numerator_forms,
        })
    }

    /// `min_i` evaluated on `prefix = l_1 .. l_{i-1}`.
    pub fn min_at(&self, prefix: &[BigRational]) -> Result<BigRational> {
        self.min_forms[prefix.len()].evaluate(prefix)
    }

    /// `max_i` evaluated on `prefix = l_1 .. l_{i-1}`.
    pub fn max_at(&self, prefix: &[BigRational]) -> Result<BigRational> {
        let i = prefix.len();
        let form = self.max_numerator_forms[i].evaluate(prefix)?;
        Ok((BigRational::one() - form)
            / BigRational::from_integer(self.max_denominators[i].clone()))
    }

    /// Checks `min_j <= l_j <= max_j` for every entry of the prefix.
    pub fn check_feasible(&self, prefix: &[BigRational]) -> Result<()> {
        if prefix.len() > self.n {
            return Err(domain("prefix longer than the stick count"));
        }
        for j in 0..prefix.len() {
            let (lo, hi) = (self.min_at(&prefix[..j])?, self.max_at(&prefix[..j])?);
            if prefix[j] < lo || prefix[j] > hi {
                return Err(domain(format!(
                    "l_{} = {} lies outside [{lo}, {hi}]",
                    j + 1,
                    prefix[j]
                )));
            }
        }
        Ok(())
    }
}

/// Exact check of `m_i (max_i - min_i) = m_{i-1} (max_{i-1} - l_{i-1})` with
/// `i = prefix.len() + 1`, for the pick-up model.
///
/// The right factor uses `l_{i-1}` itself. For `i = n` the bound is `max_n = 1`.
pub fn check_max_min_identity(p: usize, n: usize, prefix: &[BigRational]) -> Result<bool> {
    let i = prefix.len() + 1;
    if i < 2 || i > n {
        return Err(domain(format!(
            "identity needs 2 <= i <= n, got i={i} n={n}"
        )));
    }
    let system = ConstraintSystem::build(p, n, Model::Pickup)?;
    system.check_feasible(prefix)?;
    let m = m_constants(p, n)?;
    let m_i = BigRational::from_integer(m[i - 1].clone());
    let m_prev = BigRational::from_integer(m[i - 2].clone());

    let lhs = m_i * (system.max_at(prefix)? - system.min_at(prefix)?);
    let head = &prefix[..i - 2];
    let rhs = m_prev * (system.max_at(head)? - &prefix[i - 2]);
    Ok(lhs == rhs)
}

/// A random feasible prefix of length `len`, each entry a grid point of spacing
/// `1 / grid` across its own `[min, max]` interval.
pub fn random_feasible_prefix<R: Rng + ?Sized>(
    system: &ConstraintSystem,
    len: usize,
    grid: u32,
    rng: &mut R,
) -> Result<Vec<BigRational>> {
    if len > system.n {
        return Err(domain("prefix longer than the stick count"));
    }
    if grid == 0 {
        return Err(domain("grid must be positive"));
    }
    let mut prefix = Vec::with_capacity(len);
    for _ in 0..len {
        let lo = system.min_at(&prefix)?;
        let hi = system.max_at(&prefix)?;
        let t = BigRational::new(BigInt::from(rng.random_range(0..=grid)), BigInt::from(grid));
        prefix.push(&lo + (hi - &lo) * t);
    }
    Ok(prefix)
}
