use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("constant learning rate must be in (0, 0.5] (got {0})")]
    InvalidConstantRate(f64),

    #[error("power-law base rate must be in (0, 0.5] (got {0})")]
    InvalidBaseRate(f64),

    #[error("power-law exponent must be in (0, 1] (got {0})")]
    InvalidExponent(f64),

    #[error("oracle schedule requires a squared-error proxy")]
    MissingErrorProxy,

    #[error("step index must be at least 1")]
    ZeroStep,

    #[error("dilution step must be non-negative and finite (got {0})")]
    InvalidDilution(f64),

    #[error("inner iteration count must be at least 1")]
    ZeroInnerIterations,

    #[error("gradient-descent learning rate must be positive and finite (got {0})")]
    InvalidGradientRate(f64),

    #[error("maximum-likelihood updates need finite shot counts")]
    InfiniteShotsForMl,

    #[error("estimator built for dimension {expected}, got operator of dimension {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("design matrix is rank deficient (min singular value {0:.3e})")]
    DesignRankDeficient(f64),

    #[error("unknown estimator kind '{0}'")]
    UnknownKind(String),

    #[error(transparent)]
    Measurement(#[from] pauli_measurements::Error),

    #[error(transparent)]
    Core(#[from] quantum_core::Error),
}
