use thiserror::Error;

use crate::solver::AnomalyReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("ambient dimension must be positive")]
    ZeroAmbient,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element is not in {subalgebra}: {detail}")]
    NotInSubalgebra {
        subalgebra: &'static str,
        detail: String,
    },

    #[error("map has not been verified against the defining relations")]
    Unverified,

    #[error("map fails the defining relations: {0}")]
    RelationsViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("compatibility condition ad(l{j})(u{i}) = ad(l{i})(u{j}) fails")]
    Incompatible { i: usize, j: usize },

    #[error("graded slice is not finite for weights {0:?}")]
    InfiniteSlice(Vec<i64>),

    #[error("term limit exceeded: {terms} terms > {limit}")]
    TermLimit { terms: usize, limit: usize },

    #[error("anomaly: {}", .0.message)]
    Anomaly(Box<AnomalyReport>),

    #[error("malformed data: {0}")]
    Malformed(String),
}
