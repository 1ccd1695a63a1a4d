use std::time::Instant;

use estimators::{Estimator, EstimatorKind};
use pauli_measurements::{
    random_density_matrix, sample_measurement, PauliBasis, RandomSource, Shots,
};
use quantum_core::{frobenius_sq_distance, infidelity, DensityMatrix};

use crate::{ExperimentConfig, Result};

/// Geometric decimation grid: multiples of `stride·10^k` within each
/// decade, plus the first and last step. Grids for stride `s` and `10s`
/// share every point of the coarser one, so decimation never changes what
/// a common point reports.
pub fn decimation_grid(total: u64, stride: u64) -> Vec<u64> {
    let stride = stride.max(1);
    let mut grid = vec![1u64];
    let mut step = stride;
    'decades: loop {
        for multiple in 1..=9u64 {
            let t = match step.checked_mul(multiple) {
                Some(t) => t,
                None => break 'decades,
            };
            if t > total {
                break 'decades;
            }
            grid.push(t);
        }
        step = match step.checked_mul(10) {
            Some(s) => s,
            None => break,
        };
    }
    grid.push(total);
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// Per-estimator metric series at the recorded steps of one trial.
///
/// The point at step `t` carries the state *before* update `t` (so `t = 1`
/// is the common initialization for every estimator) together with the
/// wall time of update `t` itself.
#[derive(Debug, Clone)]
pub struct EstimatorTrace {
    pub kind: EstimatorKind,
    pub infidelity: Vec<f64>,
    pub frobenius_sq: Vec<f64>,
    pub update_ns: Vec<u64>,
    pub cumulative_ns: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct TrialTrace {
    pub trial_index: u64,
    pub ts: Vec<u64>,
    pub estimators: Vec<EstimatorTrace>,
}

impl TrialTrace {
    /// Equality of everything except the wall-time columns.
    pub fn metrics_eq(&self, other: &TrialTrace) -> bool {
        if self.ts != other.ts || self.estimators.len() != other.estimators.len() {
            return false;
        }
        self.estimators.iter().zip(&other.estimators).all(|(a, b)| {
            a.kind == b.kind
                && a.infidelity.len() == b.infidelity.len()
                && a.infidelity
                    .iter()
                    .zip(&b.infidelity)
                    .all(|(x, y)| x.to_bits() == y.to_bits())
                && a.frobenius_sq
                    .iter()
                    .zip(&b.frobenius_sq)
                    .all(|(x, y)| x.to_bits() == y.to_bits())
        })
    }

    /// Metric values of one estimator at a given recorded step.
    pub fn at(&self, kind: EstimatorKind, t: u64) -> Option<(f64, f64)> {
        let slot = self.ts.iter().position(|&x| x == t)?;
        let series = self.estimators.iter().find(|e| e.kind == kind)?;
        Some((series.infidelity[slot], series.frobenius_sq[slot]))
    }
}

/// Stream id roles under one trial's key; keeps the true state independent
/// of the measurement stream (and of the shots value being swept).
const STREAM_ROLE_STATE: u64 = 0;
const STREAM_ROLE_MEASUREMENT: u64 = 1;

pub(crate) fn trial_state(
    config: &ExperimentConfig,
    basis: &PauliBasis,
    trial_index: u64,
) -> Result<DensityMatrix> {
    let mut rng = RandomSource::stream(config.seed, trial_index * 4 + STREAM_ROLE_STATE);
    Ok(random_density_matrix(basis.dim(), None, &mut rng)?)
}

/// One trial: generate the true state from `(seed, trial_index)`, then feed
/// one shared record stream to every enabled estimator, recording metrics
/// at the decimation grid. Fully deterministic given `(config, shots,
/// trial_index)`; wall-time columns are the only machine-dependent output.
pub fn run_trial(
    config: &ExperimentConfig,
    basis: &PauliBasis,
    shots: Shots,
    trial_index: u64,
) -> Result<TrialTrace> {
    let rho = trial_state(config, basis, trial_index)?;
    let mut measurement_rng =
        RandomSource::stream(config.seed, trial_index * 4 + STREAM_ROLE_MEASUREMENT);

    let params = config.estimator_params(shots);
    let mut estimators: Vec<Estimator> = config
        .estimators
        .iter()
        .map(|&kind| Estimator::build(kind, basis, &params))
        .collect::<estimators::Result<_>>()?;

    let grid = decimation_grid(config.iterations, config.stride);
    let mut traces: Vec<EstimatorTrace> = config
        .estimators
        .iter()
        .map(|&kind| EstimatorTrace {
            kind,
            infidelity: Vec::with_capacity(grid.len()),
            frobenius_sq: Vec::with_capacity(grid.len()),
            update_ns: Vec::with_capacity(grid.len()),
            cumulative_ns: Vec::with_capacity(grid.len()),
        })
        .collect();

    let needs_proxy = config.needs_error_proxy();
    let mut cumulative_ns = vec![0u64; estimators.len()];
    let mut grid_cursor = 0usize;

    for t in 1..=config.iterations {
        let record_point = grid_cursor < grid.len() && grid[grid_cursor] == t;
        if record_point {
            grid_cursor += 1;
        }

        let index = measurement_rng.uniform_index(basis.len());
        let record = sample_measurement(&rho, basis, index, shots, t, &mut measurement_rng)?;

        for (slot, estimator) in estimators.iter_mut().enumerate() {
            let estimate = estimator.estimate();
            if record_point {
                traces[slot]
                    .infidelity
                    .push(infidelity(&estimate, &rho)?);
                traces[slot]
                    .frobenius_sq
                    .push(frobenius_sq_distance(estimate.as_hermitian(), rho.as_hermitian())?);
            }
            let proxy = needs_proxy
                .then(|| frobenius_sq_distance(estimate.as_hermitian(), rho.as_hermitian()))
                .transpose()?;

            let started = Instant::now();
            estimator.process(basis, &record, proxy)?;
            let elapsed = started.elapsed().as_nanos() as u64;

            cumulative_ns[slot] += elapsed;
            if record_point {
                traces[slot].update_ns.push(elapsed);
                traces[slot].cumulative_ns.push(cumulative_ns[slot]);
            }
        }
    }

    Ok(TrialTrace {
        trial_index,
        ts: grid,
        estimators: traces,
    })
}
