use pauli_measurements::Shots;
use quantum_core::{frobenius_sq_distance, DensityMatrix};

use crate::{Error, Result};

fn dims(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    if sigma.dim() != rho.dim() {
        return Err(Error::Core(quantum_core::Error::DimensionMismatch(
            sigma.dim(),
            rho.dim(),
        )));
    }
    Ok(sigma.dim() as f64)
}

/// Uniform-average loss over the non-identity Pauli words with exact
/// outcomes: `E{L(σ)} = (d/(d²−1))·‖σ−ρ‖²_F`.
pub fn expected_loss_noiseless(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    let d = dims(sigma, rho)?;
    let frob = frobenius_sq_distance(sigma.as_hermitian(), rho.as_hermitian())?;
    Ok(d / (d * d - 1.0) * frob)
}

/// Uniform-average shot-noise variance term:
/// `E{(1−y²)/N} = (d/(N(d²−1)))·(d − ‖ρ‖²_F)`.
pub fn expected_noise_variance(rho: &DensityMatrix, shots: u64) -> Result<f64> {
    if shots == 0 {
        return Err(Error::InvalidParams("shot count must be ≥ 1".into()));
    }
    let d = rho.dim() as f64;
    Ok(d / (shots as f64 * (d * d - 1.0)) * (d - rho.purity()))
}

/// Uniform-average loss with shot noise:
/// `E{L(σ)} = (d/(d²−1))·(‖σ−ρ‖²_F + (d−‖ρ‖²_F)/N)`;
/// the infinite-shot marker recovers the noiseless value.
pub fn expected_loss_noisy(sigma: &DensityMatrix, rho: &DensityMatrix, shots: Shots) -> Result<f64> {
    match shots {
        Shots::Infinite => expected_loss_noiseless(sigma, rho),
        Shots::Finite(0) => Err(Error::InvalidParams("shot count must be ≥ 1".into())),
        Shots::Finite(n) => {
            let d = dims(sigma, rho)?;
            let frob = frobenius_sq_distance(sigma.as_hermitian(), rho.as_hermitian())?;
            Ok(d / (d * d - 1.0) * (frob + (d - rho.purity()) / n as f64))
        }
    }
}
