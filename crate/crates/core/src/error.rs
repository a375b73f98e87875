use thiserror::Error;

/// Errors raised by norm evaluation and the analyses built on it.
#[derive(Debug, Error)]
pub enum Error {
    /// An m-th-root polynomial was non-positive, so `P^(1/m)` is not a norm there.
    #[error("polynomial value {value} is not positive at y = {at:?}")]
    NonPositiveArgument { value: f64, at: Vec<f64> },

    #[error("zero vector is outside the domain of this operation")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension 2, metric has dimension {0}")]
    NotPlanar(usize),

    #[error("invalid metric definition: {0}")]
    InvalidMetric(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The energy profile is flat to sampling accuracy (the Riemannian case), so
    /// there are no isolated critical points to resolve.
    #[error("energy profile is constant (spread {spread:e} relative to mean {mean}); no isolated critical points")]
    ConstantProfile { spread: f64, mean: f64 },

    #[error("no critical points resolved on a grid of {0} angles")]
    NoCriticalPoints(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
