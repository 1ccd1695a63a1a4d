use pauli_measurements::Shots;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Learning-rate policy for the gradient-based estimators.
///
/// `Constant` and `PowerLaw` accept rates up to and including 0.5: the
/// benchmark configuration uses the 0.5 boundary (and power-law bases of
/// 0.5 across the whole exponent grid), while the per-step progress bound
/// only holds strictly below 0.5 — the theory suite enforces the strict
/// range separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LearningRateSchedule {
    /// η_t = η for all t.
    Constant { eta: f64 },
    /// η_t = η₀ · t^(−β).
    PowerLaw { eta0: f64, beta: f64 },
    /// η_t = (1/2)·e_t/(e_t + 2(d²−1)/(Nd)) with e_t a caller-supplied
    /// squared-error proxy. Needs the true error, so it is a diagnostic /
    /// state-tracking tool rather than a practical tomography schedule.
    Oracle { shots: Shots, dim: usize },
}

impl LearningRateSchedule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LearningRateSchedule::Constant { eta } => {
                if !(eta > 0.0 && eta <= 0.5 && eta.is_finite()) {
                    return Err(Error::InvalidConstantRate(eta));
                }
            }
            LearningRateSchedule::PowerLaw { eta0, beta } => {
                if !(eta0 > 0.0 && eta0 <= 0.5 && eta0.is_finite()) {
                    return Err(Error::InvalidBaseRate(eta0));
                }
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(Error::InvalidExponent(beta));
                }
            }
            LearningRateSchedule::Oracle { dim, .. } => {
                if dim < 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        got: dim,
                    });
                }
            }
        }
        Ok(())
    }

    /// The rate for step `t ≥ 1`. The oracle variant requires
    /// `error_proxy`; the others ignore it.
    pub fn eta_at(&self, t: u64, error_proxy: Option<f64>) -> Result<f64> {
        if t == 0 {
            return Err(Error::ZeroStep);
        }
        Ok(match *self {
            LearningRateSchedule::Constant { eta } => eta,
            LearningRateSchedule::PowerLaw { eta0, beta } => eta0 * (t as f64).powf(-beta),
            LearningRateSchedule::Oracle { shots, dim } => {
                let error = error_proxy.ok_or(Error::MissingErrorProxy)?;
                let d = dim as f64;
                let noise_scale = match shots {
                    Shots::Finite(n) => 2.0 * (d * d - 1.0) / (n as f64 * d),
                    Shots::Infinite => 0.0,
                };
                if error + noise_scale == 0.0 {
                    0.0
                } else {
                    0.5 * error / (error + noise_scale)
                }
            }
        })
    }
}
