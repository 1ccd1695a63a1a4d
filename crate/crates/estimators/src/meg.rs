use pauli_measurements::{expected_value, MeasurementRecord, PauliBasis, RunningAverageTable};
use quantum_core::{DensityMatrix, HermitianMatrix};

use crate::{Error, LearningRateSchedule, Result};

/// Whether an estimator consumes raw outcomes or per-observable running
/// averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputModeKind {
    Raw,
    RunningAverage,
}

#[derive(Debug, Clone)]
pub enum InputMode {
    Raw,
    RunningAverage(RunningAverageTable),
}

impl InputMode {
    pub(crate) fn new(kind: InputModeKind, num_observables: usize) -> Self {
        match kind {
            InputModeKind::Raw => InputMode::Raw,
            InputModeKind::RunningAverage => {
                InputMode::RunningAverage(RunningAverageTable::new(num_observables))
            }
        }
    }

    pub(crate) fn resolve(&mut self, record: &MeasurementRecord) -> f64 {
        match self {
            InputMode::Raw => record.y_hat,
            InputMode::RunningAverage(table) => table.update_with_record(record),
        }
    }

    pub(crate) fn is_running_average(&self) -> bool {
        matches!(self, InputMode::RunningAverage(_))
    }
}

/// Squared-residual loss `(tr(σX) − ŷ)²`.
pub fn meg_loss(sigma: &DensityMatrix, x: &HermitianMatrix, y_hat: f64) -> f64 {
    let r = x.trace_product(sigma.as_hermitian()) - y_hat;
    r * r
}

/// Matrix-exponentiated gradient estimator.
///
/// Accumulates gradients in the log domain, `G ← G − 2η_t(tr(ρ̂X) − y*)X`,
/// and recovers the estimate as `ρ̂ = exp(G)/tr exp(G)` — one
/// eigendecomposition per update, which is the O(d³) bottleneck. Because
/// the estimate is an exponential, every iterate is positive definite
/// without any projection.
#[derive(Debug, Clone)]
pub struct MegState {
    log_accumulator: HermitianMatrix,
    rho_hat: DensityMatrix,
    step: u64,
    schedule: LearningRateSchedule,
    mode: InputMode,
}

impl MegState {
    /// Fresh estimator at the maximally mixed state (`G = 0`).
    pub fn new(
        basis: &PauliBasis,
        schedule: LearningRateSchedule,
        mode: InputModeKind,
    ) -> Result<Self> {
        schedule.validate()?;
        let dim = basis.dim();
        Ok(Self {
            log_accumulator: HermitianMatrix::zeros(dim),
            rho_hat: DensityMatrix::maximally_mixed(dim),
            step: 0,
            schedule,
            mode: InputMode::new(mode, basis.len()),
        })
    }

    /// Consume one measurement record.
    ///
    /// `error_proxy` is only consulted by the oracle schedule; it is the
    /// caller's estimate of `E‖ρ̂ − ρ‖²_F` (in benchmarks, the true
    /// per-trial squared error).
    pub fn update(
        &mut self,
        basis: &PauliBasis,
        record: &MeasurementRecord,
        error_proxy: Option<f64>,
    ) -> Result<()> {
        let x = basis.observable(record.observable_index)?;
        if x.dim() != self.rho_hat.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.rho_hat.dim(),
                got: x.dim(),
            });
        }
        self.step += 1;
        let eta = self.schedule.eta_at(self.step, error_proxy)?;
        let y_star = self.mode.resolve(record);
        let residual = expected_value(&self.rho_hat, x) - y_star;
        self.log_accumulator.add_scaled_assign(-2.0 * eta * residual, x);
        self.rho_hat = self.log_accumulator.normalize_exp();
        Ok(())
    }

    pub fn estimate(&self) -> DensityMatrix {
        self.rho_hat.clone()
    }

    /// The log-domain accumulator G (the estimate is `normalize_exp(G)`).
    pub fn log_accumulator(&self) -> &HermitianMatrix {
        &self.log_accumulator
    }

    /// Completed update count.
    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn schedule(&self) -> &LearningRateSchedule {
        &self.schedule
    }

    pub fn is_running_average(&self) -> bool {
        self.mode.is_running_average()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauli_measurements::Shots;

    fn basis1() -> PauliBasis {
        PauliBasis::new(1).unwrap()
    }

    fn record(index: usize, y_hat: f64, t: u64) -> MeasurementRecord {
        MeasurementRecord {
            observable_index: index,
            y_hat,
            shots: Shots::Infinite,
            t,
        }
    }

    #[test]
    fn fresh_state_is_maximally_mixed() {
        let basis = basis1();
        let meg = MegState::new(
            &basis,
            LearningRateSchedule::Constant { eta: 0.4 },
            InputModeKind::Raw,
        )
        .unwrap();
        let expected = DensityMatrix::maximally_mixed(2);
        assert!(meg.estimate().as_hermitian().max_abs_diff(expected.as_hermitian()) < 1e-14);
    }

    #[test]
    fn zero_gradient_is_a_fixed_point() {
        let basis = basis1();
        let mut meg = MegState::new(
            &basis,
            LearningRateSchedule::Constant { eta: 0.5 },
            InputModeKind::Raw,
        )
        .unwrap();
        // tr(ρ̂ Z) = 0 at the mixed state, so y* = 0 produces no movement
        let before = meg.estimate();
        meg.update(&basis, &record(2, 0.0, 1), None).unwrap();
        assert!(meg.estimate().as_hermitian().max_abs_diff(before.as_hermitian()) < 1e-13);
    }

    #[test]
    fn single_update_closed_form() {
        // start I/2, observe Z with y = 1 at η = 0.5:
        // G = Z, ρ̂ = diag(e, 1/e)/(e + 1/e), tr(ρ̂Z) = tanh(1)
        let basis = basis1();
        let mut meg = MegState::new(
            &basis,
            LearningRateSchedule::Constant { eta: 0.5 },
            InputModeKind::Raw,
        )
        .unwrap();
        meg.update(&basis, &record(2, 1.0, 1), None).unwrap();
        let z = basis.observable(2).unwrap();
        let polarization = expected_value(&meg.estimate(), z);
        assert!((polarization - 1.0f64.tanh()).abs() < 1e-12);

        let g = meg.log_accumulator();
        let expected_g = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(g.max_abs_diff(&expected_g) < 1e-13);
    }

    #[test]
    fn loss_examples() {
        let basis = basis1();
        let z = basis.observable(2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(meg_loss(&mixed, z, 0.0), 0.0);
        assert_eq!(meg_loss(&mixed, z, 1.0), 1.0);
        let pure = DensityMatrix::new(HermitianMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        assert!(meg_loss(&pure, z, 1.0) < 1e-30);
    }

    #[test]
    fn cached_estimate_tracks_accumulator() {
        let basis = basis1();
        let mut meg = MegState::new(
            &basis,
            LearningRateSchedule::PowerLaw { eta0: 0.25, beta: 0.75 },
            InputModeKind::Raw,
        )
        .unwrap();
        for t in 1..=20u64 {
            let y = if t % 2 == 0 { 0.6 } else { -0.2 };
            meg.update(&basis, &record((t % 3) as usize, y, t), None).unwrap();
            let recomputed = meg.log_accumulator().normalize_exp();
            assert!(
                meg.estimate()
                    .as_hermitian()
                    .max_abs_diff(recomputed.as_hermitian())
                    < 1e-10
            );
        }
        assert_eq!(meg.step(), 20);
    }
}
