use thiserror::Error;

/// Errors surfaced by the featurizer and readout layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Operands act on incompatible spaces.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A dataset or generated series cannot support the request.
    #[error("data error: {0}")]
    Data(String),

    /// A linear system was numerically singular.
    #[error("numerical rank error: {0}")]
    NumericalRank(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
