use std::collections::HashSet;
use std::path::{Path, PathBuf};

use estimators::{EstimatorKind, EstimatorParams, LearningRateSchedule};
use pauli_measurements::Shots;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Learning-rate policy selector for the MEG variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Constant,
    Powerlaw,
    Oracle,
}

impl std::str::FromStr for ScheduleKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "constant" => Ok(ScheduleKind::Constant),
            "powerlaw" => Ok(ScheduleKind::Powerlaw),
            "oracle" => Ok(ScheduleKind::Oracle),
            other => Err(format!(
                "unknown schedule '{other}' (expected constant, powerlaw, or oracle)"
            )),
        }
    }
}

/// Full experiment description. A JSON file supplies the base values and
/// CLI flags override individual fields.
///
/// Desk-scale defaults (50 states, 10⁴ iterations) keep the default grid
/// under a few minutes; paper-scale values are accepted via the same
/// fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub qubits: usize,
    /// Shot counts to sweep; each value produces its own output file.
    pub shots: Vec<Shots>,
    pub iterations: u64,
    /// Number of random true states (trials).
    pub states: usize,
    pub estimators: Vec<EstimatorKind>,
    pub schedule: ScheduleKind,
    /// Constant learning rate (MEG constant schedule and PGD variants).
    pub eta: f64,
    /// Power-law base rate η₀.
    pub eta0: f64,
    /// Power-law exponent β.
    pub beta: f64,
    /// ML dilution step ε.
    pub epsilon: f64,
    /// ML inner iterations per record.
    pub inner_iters: usize,
    pub seed: u64,
    /// Trace decimation stride (geometric grid multiplier).
    pub stride: u64,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            qubits: 1,
            shots: vec![Shots::Finite(1000)],
            iterations: 10_000,
            states: 50,
            estimators: vec![EstimatorKind::MegRa, EstimatorKind::Ml, EstimatorKind::Ls],
            schedule: ScheduleKind::Constant,
            eta: 0.5,
            eta0: 0.25,
            beta: 0.75,
            epsilon: 0.1,
            inner_iters: 10,
            seed: 1,
            stride: 1,
            out: PathBuf::from("results.csv"),
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=7).contains(&self.qubits) {
            return Err(Error::Config(format!(
                "qubits must be in 1..=7 (got {})",
                self.qubits
            )));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be ≥ 1".into()));
        }
        if self.states == 0 {
            return Err(Error::Config("states must be ≥ 1".into()));
        }
        if self.stride == 0 {
            return Err(Error::Config("stride must be ≥ 1".into()));
        }
        if self.shots.is_empty() {
            return Err(Error::Config("at least one shots value is required".into()));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("at least one estimator is required".into()));
        }
        let mut seen = HashSet::new();
        for kind in &self.estimators {
            if !seen.insert(kind) {
                return Err(Error::Config(format!("estimator '{kind}' listed twice")));
            }
        }
        for &shots in &self.shots {
            if shots == Shots::Finite(0) {
                return Err(Error::Config("shot counts must be ≥ 1".into()));
            }
            if shots == Shots::Infinite {
                if let Some(kind) = self.estimators.iter().find(|k| k.requires_finite_shots()) {
                    return Err(Error::Config(format!(
                        "estimator '{kind}' needs finite shot counts, but shots=inf was requested"
                    )));
                }
            }
            self.learning_rate_schedule(shots).validate()?;
        }
        if self.epsilon < 0.0 || !self.epsilon.is_finite() {
            return Err(Error::Config(format!(
                "epsilon must be non-negative (got {})",
                self.epsilon
            )));
        }
        if self.inner_iters == 0 {
            return Err(Error::Config("inner-iters must be ≥ 1".into()));
        }
        Ok(())
    }

    /// The schedule for a given shots value (the oracle rate depends on N).
    pub fn learning_rate_schedule(&self, shots: Shots) -> LearningRateSchedule {
        match self.schedule {
            ScheduleKind::Constant => LearningRateSchedule::Constant { eta: self.eta },
            ScheduleKind::Powerlaw => LearningRateSchedule::PowerLaw {
                eta0: self.eta0,
                beta: self.beta,
            },
            ScheduleKind::Oracle => LearningRateSchedule::Oracle {
                shots,
                dim: 1usize << self.qubits,
            },
        }
    }

    pub fn estimator_params(&self, shots: Shots) -> EstimatorParams {
        EstimatorParams {
            schedule: self.learning_rate_schedule(shots),
            pgd_eta: self.eta,
            epsilon: self.epsilon,
            inner_iterations: self.inner_iters,
        }
    }

    pub fn needs_error_proxy(&self) -> bool {
        self.schedule == ScheduleKind::Oracle
    }

    /// SHA-256 of the canonical JSON form; embedded in every CSV artifact.
    pub fn sha256_hex(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Output path for one shots value: the configured path itself when a
    /// single value is swept, otherwise `stem_N<shots>.ext`.
    pub fn out_path_for(&self, shots: Shots) -> PathBuf {
        if self.shots.len() <= 1 {
            return self.out.clone();
        }
        let stem = self
            .out
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "results".into());
        let ext = self
            .out
            .extension()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "csv".into());
        let name = format!("{stem}_N{shots}.{ext}");
        self.out.with_file_name(name)
    }
}
