use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("qubit count must be between 1 and 7 (got {0})")]
    QubitCountOutOfRange(usize),

    #[error("observable index {index} out of range (basis has {count} observables)")]
    ObservableIndexOutOfRange { index: usize, count: usize },

    #[error("operator is not an involution (max |X² − I| entry = {0:.3e})")]
    NotInvolutive(f64),

    #[error("outcome probability {0} outside [0, 1]; state is not physical")]
    InvalidProbability(f64),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("rank must be in 1..=dim (got rank {rank} for dim {dim})")]
    InvalidRank { rank: usize, dim: usize },

    #[error("record inconsistent with its shot count: y_hat {y_hat} at N = {shots}")]
    MalformedRecord { y_hat: f64, shots: u64 },

    #[error(transparent)]
    Core(#[from] quantum_core::Error),
}
