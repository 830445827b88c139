use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected ground set of size {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cardinality mismatch: expected a {expected}-multiset, got cardinality {found}")]
    CardinalityMismatch { expected: u32, found: u32 },

    #[error("multiplicity {found} exceeds the height cap {cap}")]
    HeightCapExceeded { cap: u32, found: u32 },

    #[error("invalid column index {index} for ground set of size {n}")]
    InvalidColumn { index: usize, n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("family is not {t}-intersecting")]
    NotIntersecting { t: u32 },

    #[error("kernel precondition failed: {0}")]
    KernelPrecondition(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
