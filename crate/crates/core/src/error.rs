use thiserror::Error;

/// Errors raised by the algebraic routines and the expression parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed expression text; `pos` is a byte offset into the input.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// Mixing values that live over different coefficient domains.
    #[error("coefficient domain mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
