//! Exact and simulated probabilities that random sticks can (or cannot) form polygons.
//!
//! Two sampling models are covered. In the *pick-up sticks* model the `n` lengths are
//! independent draws, uniform on `[0,1]` by default; [`closed_form`] also handles a
//! truncated uniform law on `[a,1]` and exponential lengths. In the *broken stick* model a
//! unit stick is cut at `n - 1` uniform points.
//!
//! `PN` is the probability that no `p + 1` of the `n` sticks form a `(p+1)`-gon. `PA`
//! asks that every choice does (closed forms exist for `p + 1` of 3 or 4) and `PR` that a
//! random choice does. The exact values are products over p-step Fibonacci numbers
//! ([`sequences`]) and the bound constants of [`constraints`].
//!
//! [`oracle`] integrates the constraint polytope symbolically, and [`montecarlo`] runs a
//! reproducible parallel simulation; both serve as independent checks on the closed forms.
//! [`verify`] bundles those checks into named suites.

pub mod closed_form;
pub mod constraints;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod sequences;
pub mod verify;

pub use closed_form::ExactProb;
pub use constraints::{LinearForm, Model};
pub use error::{Error, Result};
pub use sequences::StepFibTable;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
