//! Error types shared across the crate.
//!
//! The three kinds matter to callers because they map to distinct CLI exit
//! codes: parse errors (bad input text), domain errors (violated
//! preconditions such as an unsupported ring or mismatched degrees), and
//! invariant violations. The last kind signals that an exact theorem failed
//! to verify, which is always a bug in this crate, never a user error.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Domain(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    /// A theorem-contradicting computation, reported with a diagnostic dump.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Error {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
