use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("observable spectrum must lie within [-1, 1] (got [{min}, {max}])")]
    ObservableOutOfRange { min: f64, max: f64 },

    #[error("state must be positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    #[error("operator must satisfy 0 ≤ A ≤ I (spectrum [{min}, {max}])")]
    ContractionOutOfRange { min: f64, max: f64 },

    #[error("zeta argument must exceed 1 (got {0})")]
    ZetaArgumentTooSmall(f64),

    #[error("log argument {0} is non-positive: outside the inequality's domain")]
    LogDomainViolation(f64),

    #[error("probability weight must be in [0, 1] (got {0})")]
    WeightOutOfRange(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Core(#[from] quantum_core::Error),

    #[error(transparent)]
    Measurement(#[from] pauli_measurements::Error),
}
