use thiserror::Error;

/// Errors raised by evaluators, counters and checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a desk-scale resource limit (range size, overflow, summand budget).
    #[error("capacity error: {0}")]
    Capacity(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A numerical routine failed to reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn capacity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capacity(msg.into()))
}
