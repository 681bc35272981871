use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid tropical scalar {0:?}")]
    Scalar(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("a phone call needs two distinct parties, got {0} twice")]
    SelfCall(usize),
    #[error("call weight must be nonnegative")]
    NegativeWeight,
    #[error("entry ({i}, {j}) is negative")]
    NegativeEntry { i: usize, j: usize },
    #[error("matrix is not metric")]
    NotMetric,
    #[error("graph is not connected")]
    Disconnected,
    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("memory budget exceeded: {0}")]
    MemoryBudget(String),
    #[error("matrix cannot be classified: {0}")]
    Unclassifiable(String),
    #[error("invalid detour graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
