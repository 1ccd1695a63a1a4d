use pauli_measurements::{MeasurementRecord, PauliBasis};
use quantum_core::DensityMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::{
    Error, InputModeKind, LearningRateSchedule, LsState, MegState, MlState, PgdState, Result,
};

/// The estimator variants the benchmark harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    Meg,
    MegRa,
    Ml,
    Ls,
    Pgd,
    PgdRa,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::Meg,
        EstimatorKind::MegRa,
        EstimatorKind::Ml,
        EstimatorKind::Ls,
        EstimatorKind::Pgd,
        EstimatorKind::PgdRa,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            EstimatorKind::Meg => "meg",
            EstimatorKind::MegRa => "meg-ra",
            EstimatorKind::Ml => "ml",
            EstimatorKind::Ls => "ls",
            EstimatorKind::Pgd => "pgd",
            EstimatorKind::PgdRa => "pgd-ra",
        }
    }

    /// Whether this estimator needs finite shot counts (outcome tallies).
    pub fn requires_finite_shots(&self) -> bool {
        matches!(self, EstimatorKind::Ml)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "meg" => Ok(EstimatorKind::Meg),
            "meg-ra" => Ok(EstimatorKind::MegRa),
            "ml" => Ok(EstimatorKind::Ml),
            "ls" => Ok(EstimatorKind::Ls),
            "pgd" => Ok(EstimatorKind::Pgd),
            "pgd-ra" => Ok(EstimatorKind::PgdRa),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

/// Shared parameter bundle for building estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorParams {
    /// Learning-rate schedule for MEG variants.
    pub schedule: LearningRateSchedule,
    /// Constant learning rate for PGD variants.
    pub pgd_eta: f64,
    /// Dilution step ε for ML.
    pub epsilon: f64,
    /// Inner diluted iterations per record for ML.
    pub inner_iterations: usize,
}

impl Default for EstimatorParams {
    fn default() -> Self {
        Self {
            schedule: LearningRateSchedule::Constant { eta: 0.5 },
            pgd_eta: 0.5,
            epsilon: 0.1,
            inner_iterations: 10,
        }
    }
}

/// A uniform record-in / estimate-out front over the four algorithms.
#[derive(Debug, Clone)]
pub enum Estimator {
    Meg(MegState),
    Ml(MlState),
    Ls(LsState),
    Pgd(PgdState),
}

impl Estimator {
    pub fn build(kind: EstimatorKind, basis: &PauliBasis, params: &EstimatorParams) -> Result<Self> {
        Ok(match kind {
            EstimatorKind::Meg => {
                Estimator::Meg(MegState::new(basis, params.schedule, InputModeKind::Raw)?)
            }
            EstimatorKind::MegRa => Estimator::Meg(MegState::new(
                basis,
                params.schedule,
                InputModeKind::RunningAverage,
            )?),
            EstimatorKind::Ml => {
                Estimator::Ml(MlState::new(basis, params.epsilon, params.inner_iterations)?)
            }
            EstimatorKind::Ls => Estimator::Ls(LsState::new(basis)?),
            EstimatorKind::Pgd => {
                Estimator::Pgd(PgdState::new(basis, params.pgd_eta, InputModeKind::Raw)?)
            }
            EstimatorKind::PgdRa => Estimator::Pgd(PgdState::new(
                basis,
                params.pgd_eta,
                InputModeKind::RunningAverage,
            )?),
        })
    }

    /// Feed one record. `error_proxy` is only consulted by MEG's oracle
    /// schedule.
    pub fn process(
        &mut self,
        basis: &PauliBasis,
        record: &MeasurementRecord,
        error_proxy: Option<f64>,
    ) -> Result<()> {
        match self {
            Estimator::Meg(state) => state.update(basis, record, error_proxy),
            Estimator::Ml(state) => state.update(basis, record),
            Estimator::Ls(state) => state.update(basis, record),
            Estimator::Pgd(state) => state.update(basis, record),
        }
    }

    /// A copy of the current estimate ρ̂.
    pub fn estimate(&self) -> DensityMatrix {
        match self {
            Estimator::Meg(state) => state.estimate(),
            Estimator::Ml(state) => state.estimate(),
            Estimator::Ls(state) => state.estimate(),
            Estimator::Pgd(state) => state.estimate(),
        }
    }

    pub fn kind(&self) -> EstimatorKind {
        match self {
            Estimator::Meg(state) if state.is_running_average() => EstimatorKind::MegRa,
            Estimator::Meg(_) => EstimatorKind::Meg,
            Estimator::Ml(_) => EstimatorKind::Ml,
            Estimator::Ls(_) => EstimatorKind::Ls,
            Estimator::Pgd(state) if state.is_running_average() => EstimatorKind::PgdRa,
            Estimator::Pgd(_) => EstimatorKind::Pgd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_labels_round_trip() {
        for kind in EstimatorKind::ALL {
            assert_eq!(kind.label().parse::<EstimatorKind>().unwrap(), kind);
        }
        assert!("megra".parse::<EstimatorKind>().is_err());
    }

    #[test]
    fn every_kind_starts_at_the_mixed_state() {
        let basis = PauliBasis::new(1).unwrap();
        let params = EstimatorParams::default();
        let mixed = DensityMatrix::maximally_mixed(2);
        for kind in EstimatorKind::ALL {
            let estimator = Estimator::build(kind, &basis, &params).unwrap();
            assert_eq!(estimator.kind(), kind);
            assert!(
                estimator
                    .estimate()
                    .as_hermitian()
                    .max_abs_diff(mixed.as_hermitian())
                    < 1e-14,
                "{kind}"
            );
        }
    }
}
