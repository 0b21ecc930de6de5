//! Error type shared by all library operations.
//!
//! Errors are grouped into two kinds so that callers (in particular the CLI)
//! can map them onto distinct exit codes: `Data` for unreadable or malformed
//! input, `Precondition` for structurally valid input that violates an
//! operation's mathematical preconditions (unnormalized modulus, degenerate
//! gauge, grid mismatch, out-of-range parameters).

use thiserror::Error;

/// Library error with a coarse kind used for exit-code mapping.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input data could not be read or parsed.
    #[error("data: {0}")]
    Data(String),
    /// An operation precondition was violated.
    #[error("precondition: {0}")]
    Precondition(String),
}

impl Error {
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
