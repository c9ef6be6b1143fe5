//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// m is below 2 or a perfect cube, so ∛m is not a cubic irrational.
    #[error("m = {0} must be an integer >= 2 that is not a perfect cube")]
    CubeError(u64),

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    /// Operands belong to different fields Q(∛m).
    #[error("mixed fields: m = {0} vs m = {1}")]
    MixedField(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("index {index} outside valid range {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    /// An exactness assertion on a connection certificate failed. This never
    /// happens on connections produced by detection; it signals a bug.
    #[error("certificate failure: {0}")]
    CertificateFailure(String),

    #[error("connections are not consecutive")]
    NotConsecutive,

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("histogram is empty")]
    EmptyHistogram,
}

pub type Result<T> = std::result::Result<T, Error>;
