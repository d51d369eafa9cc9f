use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arithmetic outside the domain of an operation, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid arguments or incompatible operands.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    /// Exact division left a nonzero remainder.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A mathematical identity the kernel relies on failed to hold.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("configuration rejected by resource guard: {0}")]
    ResourceGuard(String),
}
