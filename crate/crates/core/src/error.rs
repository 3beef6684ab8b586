use thiserror::Error;

use crate::exact::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported degree {degree} (cap {cap}) for factorization over Q")]
    UnsupportedDegree { degree: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("truncation bound exceeded: model dimension {dim} > {bound}")]
    TruncationExceeded { dim: usize, bound: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
