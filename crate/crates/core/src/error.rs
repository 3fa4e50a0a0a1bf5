use thiserror::Error;

use crate::freefall::TrajectoryPair;

/// Errors raised by the physics kernels and scenario plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("malformed input at `{key}`: {message}")]
    MalformedInput { key: String, message: String },

    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    #[error("phase loop undersampled: wrapped step {step:.6} rad at sample {index} reaches pi")]
    Undersampled { index: usize, step: f64 },

    #[error("singular configuration: {0}")]
    Singularity(String),

    #[error("trajectory hit the surface at t = {time} s")]
    TruncatedTrajectory {
        time: f64,
        partial: Box<TrajectoryPair>,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("small-angle regime violated: {0}")]
    SmallAngle(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
