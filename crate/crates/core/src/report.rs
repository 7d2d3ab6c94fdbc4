//! JSON reports shared by the command-line tool and anything that consumes its output.
//!
//! Exact values travel as decimal-string numerators and denominators so no precision is
//! lost in transit. Every report parses back into the structure it was written from.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::closed_form::ExactProb;
use crate::error::{Error, Result};
use crate::montecarlo::MCEstimate;

pub const SCHEMA_VERSION: u32 = 1;

/// Reports larger than this are refused before decoding.
pub const MAX_REPORT_BYTES: usize = 1 << 20;

/// An exact fraction as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl Fraction {
    pub fn from_rational(q: &BigRational) -> Self {
        Self {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }

    /// Parses both parts; the denominator must be positive and the fraction reduced.
    pub fn to_rational(&self) -> Result<BigRational> {
        let num = parse_big(&self.num)?;
        let den = parse_big(&self.den)?;
        if den <= BigInt::from(0) {
            return Err(Error::Parse(format!("denominator {den} is not positive")));
        }
        let q = BigRational::new(num.clone(), den.clone());
        if q.numer() != &num || q.denom() != &den {
            return Err(Error::Parse(format!("{num}/{den} is not in lowest terms")));
        }
        Ok(q)
    }
}

fn parse_big(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("{s:?} is not an integer")));
    }
    s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub problem: String,
    pub model: String,
    pub p: usize,
    pub n: Option<usize>,
    #[serde(default)]
    pub extra_params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactResult {
    pub exact: Fraction,
    pub decimal: String,
    /// Set when `n <= p` and the value holds only because no `(p+1)`-subset exists.
    pub vacuous: bool,
}

impl ExactResult {
    pub fn new(prob: &ExactProb, digits: usize, vacuous: bool) -> Self {
        Self {
            exact: Fraction::from_rational(prob.value()),
            decimal: prob.decimal(digits),
            vacuous,
        }
    }

    pub fn prob(&self) -> Result<ExactProb> {
        ExactProb::new(self.exact.to_rational()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McResult {
    pub event: String,
    pub distribution: String,
    pub p_hat: f64,
    pub successes: u64,
    pub std_err: f64,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    /// `(p_hat - exact) / std_err`, absent without a closed form or with zero spread.
    pub z_vs_exact: Option<f64>,
}

impl McResult {
    pub fn new(est: &MCEstimate, workers: usize, exact: Option<&ExactProb>) -> Self {
        let event = serde_json::to_value(est.event.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        Self {
            event,
            distribution: est.dist.to_string(),
            p_hat: est.p_hat,
            successes: est.successes,
            std_err: est.std_err,
            trials: est.trials,
            seed: est.seed,
            workers,
            z_vs_exact: exact.and_then(|e| est.z_score(e.to_f64())),
        }
    }
}

/// Output of `compute` and `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Inputs,
    pub result: Option<ExactResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McResult>,
}

/// One named identity from a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub suite: String,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

/// Output of `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: String,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "verify".into(),
            suite: suite.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Output of `constants`. Big integers are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsReport {
    pub schema_version: u32,
    pub command: String,
    pub kind: String,
    pub p: usize,
    pub n: Option<usize>,
    pub model: Option<String>,
    pub values: Vec<ConstantEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub index: i64,
    pub value: String,
    /// Numerator form `c_1 l_1 + ..` of an upper bound, when the entry is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
}

/// Decodes any report type, refusing oversized input.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    if text.len() > MAX_REPORT_BYTES {
        return Err(Error::Parse(format!(
            "report exceeds {MAX_REPORT_BYTES} bytes"
        )));
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports contain only finite, serializable fields")
}
