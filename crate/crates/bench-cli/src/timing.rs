use std::ops::RangeInclusive;
use std::time::Instant;

use estimators::{Estimator, EstimatorKind};
use pauli_measurements::{
    random_density_matrix, sample_measurement, PauliBasis, RandomSource, Shots,
};

use crate::{Error, ExperimentConfig, Result};

const WARMUP_UPDATES: u32 = 10;
const MEDIAN_CHUNKS: usize = 10;

/// Per-dimension timing of one estimator's update call.
#[derive(Debug, Clone)]
pub struct TimingPoint {
    pub qubits: usize,
    pub dim: usize,
    pub reps: u32,
    pub mean_ns: f64,
    pub median_of_means_ns: f64,
    /// Set when the timer granularity exceeds 1% of the measured mean.
    pub resolution_warning: bool,
}

#[derive(Debug, Clone)]
pub struct TimingResult {
    pub kind: EstimatorKind,
    pub points: Vec<TimingPoint>,
    /// Least-squares slope of log(time) against log(dim).
    pub slope: f64,
}

fn timer_granularity_ns() -> f64 {
    let mut smallest = f64::INFINITY;
    for _ in 0..64 {
        let start = Instant::now();
        let mut elapsed = start.elapsed();
        while elapsed.is_zero() {
            elapsed = start.elapsed();
        }
        smallest = smallest.min(elapsed.as_nanos() as f64);
    }
    smallest
}

fn fit_log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Measure the update step of one estimator across qubit counts.
///
/// Protocol per dimension: build the basis and a fresh estimator, feed
/// `WARMUP_UPDATES` warm-up records, then time `reps` further updates
/// individually (the monotonic clock wraps only the update call; record
/// sampling and state generation run outside it). Reports the mean and a
/// median-of-means over ten chunks, plus the least-squares log-log slope
/// across dimensions. Runs strictly sequentially.
pub fn time_updates(
    kind: EstimatorKind,
    qubit_range: RangeInclusive<usize>,
    reps: u32,
    config: &ExperimentConfig,
    shots: Shots,
) -> Result<TimingResult> {
    if reps < 100 {
        return Err(Error::Config(format!(
            "timing needs at least 100 warm measurements (got {reps})"
        )));
    }
    if kind.requires_finite_shots() && !shots.is_finite() {
        return Err(Error::Config(format!(
            "estimator '{kind}' needs finite shot counts for timing"
        )));
    }
    let granularity = timer_granularity_ns();
    let params_shots = shots;
    let mut points = Vec::new();

    for qubits in qubit_range {
        let basis = PauliBasis::new(qubits)?;
        let mut rng = RandomSource::stream(config.seed, 0xD1A6 + qubits as u64);
        let rho = random_density_matrix(basis.dim(), None, &mut rng)?;
        let params = config.estimator_params(params_shots);
        let mut estimator = Estimator::build(kind, &basis, &params)?;

        let total = WARMUP_UPDATES + reps;
        let records: Vec<_> = (1..=u64::from(total))
            .map(|t| {
                let index = rng.uniform_index(basis.len());
                sample_measurement(&rho, &basis, index, shots, t, &mut rng)
            })
            .collect::<pauli_measurements::Result<_>>()?;

        for record in &records[..WARMUP_UPDATES as usize] {
            estimator.process(&basis, record, Some(0.1))?;
        }

        let mut samples = Vec::with_capacity(reps as usize);
        for record in &records[WARMUP_UPDATES as usize..] {
            let started = Instant::now();
            estimator.process(&basis, record, Some(0.1))?;
            samples.push(started.elapsed().as_nanos() as f64);
        }

        let mean_ns = samples.iter().sum::<f64>() / samples.len() as f64;
        let chunk = (samples.len() / MEDIAN_CHUNKS).max(1);
        let mut chunk_means: Vec<f64> = samples
            .chunks(chunk)
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect();
        chunk_means.sort_by(f64::total_cmp);
        let median_of_means_ns = chunk_means[chunk_means.len() / 2];

        points.push(TimingPoint {
            qubits,
            dim: basis.dim(),
            reps,
            mean_ns,
            median_of_means_ns,
            resolution_warning: granularity > mean_ns / 100.0,
        });
    }

    let slope = if points.len() >= 2 {
        fit_log_log_slope(
            &points
                .iter()
                .map(|p| (p.dim as f64, p.mean_ns))
                .collect::<Vec<_>>(),
        )
    } else {
        f64::NAN
    };

    Ok(TimingResult { kind, points, slope })
}
