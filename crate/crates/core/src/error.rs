//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("enumeration bound exceeded: degree {degree} > cap {cap}")]
    EnumerationBound { degree: usize, cap: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree cap exceeded: {0}")]
    DegreeCap(String),

    #[error("place construction failed: {0}")]
    PlaceConstruction(String),

    #[error("division by zero (or by a series indistinguishable from zero)")]
    DivisionByZero,

    #[error("{num}/{den} is not a p-adic integer: p = {p} divides the denominator")]
    NotPAdicInteger { num: i64, den: i64, p: u64 },

    #[error("gamma product convergence assertion failed: {0}")]
    Convergence(String),

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("ragged input: vectors of unequal length")]
    RaggedInput,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid denominator {b}: {reason}")]
    InvalidDenominator { b: i64, reason: String },

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}
