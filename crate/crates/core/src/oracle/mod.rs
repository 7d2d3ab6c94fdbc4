//! Exact checks that avoid the closed-form constants.
//!
//! [`symbolic`] integrates the indicator of the no-polygon region variable by variable,
//! with bounds taken straight from the minimum-length forms and the vector-route maximum
//! forms. [`rvector`] iterates the small integer matrix whose last coordinate
//! reproduces the p-step Fibonacci numbers.

pub mod poly;
pub mod rvector;
pub mod symbolic;

pub use poly::MultiPoly;
pub use rvector::{r_vector, RVector};
pub use symbolic::{symbolic_pn_pickup, symbolic_pn_truncated, vanishes_at, SymbolicIntegrator};
