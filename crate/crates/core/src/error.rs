//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),

    #[error("modulus {0} exceeds the supported field limit (p < 256)")]
    FieldTooLarge(u32),

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u8, right: u8 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown builtin scheme `{0}`")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a named precondition failure.
    pub(crate) fn contract(msg: impl Into<String>) -> Error {
        Error::ContractViolation(msg.into())
    }

    /// Shorthand for a guard refusal; `msg` must name the guard.
    pub(crate) fn refused(msg: impl Into<String>) -> Error {
        Error::Refused(msg.into())
    }
}
