//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library. Domain errors are precondition
/// violations; capacity errors mean an exact computation would exceed a
/// documented limit and was refused rather than approximated.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
