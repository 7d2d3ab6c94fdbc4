use thiserror::Error;

/// Errors raised by the exact and simulation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// No closed form is implemented for this configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The request exceeds a configured size guard.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
