use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension {dim} out of range {lo}..={hi}")]
    DimensionOutOfRange { dim: isize, lo: isize, hi: isize },

    #[error("variable `{0}` is assigned zero but occurs with a negative exponent")]
    ZeroDivisor(String),

    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("malformed cubical face `{0}`")]
    MalformedFace(String),

    #[error("direction error: {0}")]
    Direction(String),

    #[error("complex is not acyclic in positive codimension (reduced Betti number in dimension {dim} is {betti})")]
    NotApc { dim: isize, betti: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("cap exceeded: needs {required}, cap is {cap}")]
    CapExceeded { required: String, cap: u64 },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
