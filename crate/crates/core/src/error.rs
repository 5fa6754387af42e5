use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Schur decomposition did not converge")]
    SchurFailed,

    #[error("matrix exponential overflows (1-norm {norm:.3e})")]
    ExpmOverflow { norm: f64 },

    #[error("no unique stationary solution: min |alpha_i + beta_j| = {min_sum:.3e}")]
    NoUniqueSolution { min_sum: f64 },

    #[error("no unique stationary covariance: min |beta_i + beta_j| = {min_sum:.3e}")]
    NoUniqueStationaryCovariance { min_sum: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("trace drift {drift:.3e} at t = {t:.6} persists after step halving")]
    TraceDrift { drift: f64, t: f64 },

    #[error("model file: {0}")]
    ModelFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
