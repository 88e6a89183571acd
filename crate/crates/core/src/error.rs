use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operators live on different bases (dimension/truncation differ)")]
    BasisMismatch,

    #[error("trust exhausted: valid degree is {valid_degree}, max usable m is {max_usable}")]
    TrustExhausted { valid_degree: i32, max_usable: i32 },

    #[error("point is not on the unit sphere (|1 - |z|| = {deviation:.3e})")]
    OffSphere { deviation: f64 },

    #[error("point must lie strictly inside the unit ball")]
    PointNotInBall,

    #[error("frame matrix is not unitary (max |U*U - I| = {deviation:.3e})")]
    NonUnitaryFrame { deviation: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
