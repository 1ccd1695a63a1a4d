use estimators::EstimatorKind;
use pauli_measurements::{PauliBasis, Shots};
use rayon::prelude::*;

use crate::trial::run_trial;
use crate::{Error, ExperimentConfig, Result, TrialTrace};

/// Cross-trial statistics for one estimator at each recorded step.
#[derive(Debug, Clone)]
pub struct AggregateSeries {
    pub kind: EstimatorKind,
    pub infidelity_mean: Vec<f64>,
    pub infidelity_stderr: Vec<f64>,
    pub infidelity_min: Vec<f64>,
    pub infidelity_max: Vec<f64>,
    pub frob_sq_mean: Vec<f64>,
    pub frob_sq_stderr: Vec<f64>,
    pub update_ns_mean: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct AggregateResult {
    pub shots: Shots,
    pub trials: usize,
    pub ts: Vec<u64>,
    pub series: Vec<AggregateSeries>,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n * (n - 1.0))).sqrt())
}

/// Order-independent reduction of per-trial traces (trials are iterated in
/// index order, so the result does not depend on scheduling).
pub fn aggregate_traces(shots: Shots, traces: &[TrialTrace]) -> Result<AggregateResult> {
    let first = traces
        .first()
        .ok_or_else(|| Error::Config("cannot aggregate zero trials".into()))?;
    let ts = first.ts.clone();
    let points = ts.len();
    for trace in traces {
        if trace.ts != ts {
            return Err(Error::Config(
                "trials disagree on the recording grid".into(),
            ));
        }
    }

    let mut series = Vec::with_capacity(first.estimators.len());
    for (slot, proto) in first.estimators.iter().enumerate() {
        let mut out = AggregateSeries {
            kind: proto.kind,
            infidelity_mean: Vec::with_capacity(points),
            infidelity_stderr: Vec::with_capacity(points),
            infidelity_min: Vec::with_capacity(points),
            infidelity_max: Vec::with_capacity(points),
            frob_sq_mean: Vec::with_capacity(points),
            frob_sq_stderr: Vec::with_capacity(points),
            update_ns_mean: Vec::with_capacity(points),
        };
        let mut scratch = Vec::with_capacity(traces.len());
        for point in 0..points {
            scratch.clear();
            scratch.extend(traces.iter().map(|t| t.estimators[slot].infidelity[point]));
            let (mean, stderr) = mean_and_stderr(&scratch);
            out.infidelity_mean.push(mean);
            out.infidelity_stderr.push(stderr);
            out.infidelity_min
                .push(scratch.iter().copied().fold(f64::INFINITY, f64::min));
            out.infidelity_max
                .push(scratch.iter().copied().fold(f64::NEG_INFINITY, f64::max));

            scratch.clear();
            scratch.extend(traces.iter().map(|t| t.estimators[slot].frobenius_sq[point]));
            let (mean, stderr) = mean_and_stderr(&scratch);
            out.frob_sq_mean.push(mean);
            out.frob_sq_stderr.push(stderr);

            scratch.clear();
            scratch.extend(
                traces
                    .iter()
                    .map(|t| t.estimators[slot].update_ns[point] as f64),
            );
            out.update_ns_mean.push(mean_and_stderr(&scratch).0);
        }
        series.push(out);
    }

    Ok(AggregateResult {
        shots,
        trials: traces.len(),
        ts,
        series,
    })
}

/// Run the full grid: for each shots value, `states` independent trials
/// (distributed over the worker pool) aggregated in index order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<AggregateResult>> {
    config.validate()?;
    let basis = PauliBasis::new(config.qubits)?;
    let mut results = Vec::with_capacity(config.shots.len());
    for &shots in &config.shots {
        let traces: Vec<TrialTrace> = (0..config.states as u64)
            .into_par_iter()
            .map(|trial_index| run_trial(config, &basis, shots, trial_index))
            .collect::<Result<_>>()?;
        results.push(aggregate_traces(shots, &traces)?);
    }
    Ok(results)
}
