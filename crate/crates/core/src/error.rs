use thiserror::Error;

/// Errors produced by the numerical laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition (light-cone margin, window size, ...) is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A constructive procedure could not produce its object (empty index
    /// set, grid exhaustion, ...).
    #[error("construction failed: {0}")]
    Construction(String),

    /// Internal numerical failure that indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
