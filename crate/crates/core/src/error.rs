use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid algebra dimension {0}; expected 1, 2, 4 or 8")]
    InvalidDimension(usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    InvalidBasisIndex { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inverse of the zero element")]
    ZeroInverse,
    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },
    #[error("invalid twist index p = {p} for k = {k}; need 0 <= p <= k-1")]
    InvalidTwist { k: usize, p: usize },
    #[error("unsupported Clifford parameter m = {0}")]
    UnsupportedM(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("matrix of size {size} exceeds the dense materialization limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("unstable homotopy level: {0}")]
    UnstableLevel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
