use pauli_measurements::{expected_value, MeasurementRecord, PauliBasis};
use quantum_core::{project_to_physical, DensityMatrix};

use crate::meg::{InputMode, InputModeKind};
use crate::{Error, Result};

/// Projected gradient descent: `ρ̂ ← P(ρ̂ − η∇L)` with `P` the projection
/// onto the density-matrix set.
///
/// The gradient step preserves unit trace exactly (the observables are
/// traceless) but can leave the PSD cone, so the projection runs after
/// every update. No convergence guarantee is claimed for any particular
/// learning rate.
#[derive(Debug, Clone)]
pub struct PgdState {
    rho_hat: DensityMatrix,
    eta: f64,
    mode: InputMode,
}

impl PgdState {
    pub fn new(basis: &PauliBasis, eta: f64, mode: InputModeKind) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::InvalidGradientRate(eta));
        }
        Ok(Self {
            rho_hat: DensityMatrix::maximally_mixed(basis.dim()),
            eta,
            mode: InputMode::new(mode, basis.len()),
        })
    }

    pub fn update(&mut self, basis: &PauliBasis, record: &MeasurementRecord) -> Result<()> {
        let x = basis.observable(record.observable_index)?;
        if x.dim() != self.rho_hat.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.rho_hat.dim(),
                got: x.dim(),
            });
        }
        let y_star = self.mode.resolve(record);
        let residual = expected_value(&self.rho_hat, x) - y_star;
        let mut candidate = self.rho_hat.as_hermitian().clone();
        candidate.add_scaled_assign(-2.0 * self.eta * residual, x);
        self.rho_hat = project_to_physical(&candidate);
        Ok(())
    }

    pub fn estimate(&self) -> DensityMatrix {
        self.rho_hat.clone()
    }

    pub fn is_running_average(&self) -> bool {
        self.mode.is_running_average()
    }
}
