use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constraints::LinearForm;

/// Sparse polynomial with rational coefficients in a fixed number of variables.
///
/// Variable `j` (0-based) stands for `l_{j+1}`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// `form` as a polynomial in `nvars >= form.arity()` variables.
    pub fn from_form(nvars: usize, form: &LinearForm) -> Self {
        assert!(
            form.arity() <= nvars,
            "form reads more variables than available"
        );
        let mut p = Self::constant(nvars, form.constant().clone());
        for (j, c) in form.coeffs().iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[j] = 1;
            p.add_term(exps, BigRational::from_integer(c.clone()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Highest variable index with a nonzero exponent, if any.
    pub fn highest_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
    }

    /// The constant term (the whole value when no variable occurs).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Antiderivative in `var` with zero constant of integration.
    pub fn antiderivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps[var] += 1;
            let k = BigRational::from_integer(BigInt::from(exps[var]));
            out.add_term(exps, c / k);
        }
        out
    }

    /// Replaces `var` by `value`, which must not itself contain `var`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let max_pow = self.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=max_pow {
            let next = powers[k - 1].mul(value);
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            for (pe, pc) in &powers[k].terms {
                let exps = e
                    .iter()
                    .zip(pe)
                    .enumerate()
                    .map(|(j, (a, b))| if j == var { *b } else { a + b })
                    .collect();
                out.add_term(exps, c * pc);
            }
        }
        out
    }

    /// `∫_{lower}^{upper} self d(var)`, with bounds that may depend on other variables.
    pub fn integrate(&self, var: usize, lower: &Self, upper: &Self) -> Self {
        let anti = self.antiderivative(var);
        anti.substitute(var, upper)
            .sub(&anti.substitute(var, lower))
    }

    /// Evaluates at `point`, which supplies one value per variable.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point dimension");
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(point).fold(BigRational::one(), |m, (&k, x)| {
                m * num_traits::pow(x.clone(), k as usize)
            });
            acc + c * mono
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*l_{}", j + 1)?,
                    _ => write!(f, "*l_{}^{k}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}
