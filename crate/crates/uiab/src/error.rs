use thiserror::Error;

use crate::exact::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("hypotheses not met: {0}")]
    Hypothesis(String),
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error("{0}")]
    Unknown(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
