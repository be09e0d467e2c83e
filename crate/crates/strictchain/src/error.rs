use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An operator produced output beyond the cutoff of a truncated space.
    #[error("truncation overflow: {0}")]
    Truncation(String),
    /// An internal consistency check failed. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
