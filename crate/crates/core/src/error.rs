use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed contour: {0}")]
    MalformedContour(String),
    #[error("malformed sign sequence: {0}")]
    MalformedSigns(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("invalid bridge: {0}")]
    InvalidBridge(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("exact Gromov-Hausdorff is limited to 7 points per space (got {0} and {1})")]
    TooLarge(usize, usize),
    #[error("relation does not cover the balls: {0}")]
    CoverageViolation(String),
    #[error("covariance matrix is not positive semidefinite (pivot {0})")]
    CholeskyFailure(usize),
    #[error("not a metric: {0}")]
    InvalidMetric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
