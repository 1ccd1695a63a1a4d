//! Trajectory-level guarantees: positivity without projection, divergence
//! descent under noiseless updates, likelihood monotonicity, statistical
//! consistency, and the raw/running-average equivalence on exact data.

use estimators::{
    meg_loss, Estimator, EstimatorKind, EstimatorParams, InputModeKind, LearningRateSchedule,
    LsState, MegState, MlState, PgdState,
};
use pauli_measurements::{
    random_density_matrix, sample_measurement, MeasurementRecord, PauliBasis, RandomSource, Shots,
};
use quantum_core::{frobenius_sq_distance, infidelity, relative_entropy, DensityMatrix};

fn noiseless_stream(
    basis: &PauliBasis,
    rho: &DensityMatrix,
    steps: u64,
    rng: &mut RandomSource,
) -> Vec<MeasurementRecord> {
    (1..=steps)
        .map(|t| {
            let index = rng.uniform_index(basis.len());
            sample_measurement(rho, basis, index, Shots::Infinite, t, rng).unwrap()
        })
        .collect()
}

#[test]
fn meg_iterates_stay_physical_over_random_updates() {
    // positivity is structural: no projection ever runs inside MEG
    let mut rng = RandomSource::new(1001);
    for m in [1usize, 2] {
        let basis = PauliBasis::new(m).unwrap();
        let mut meg = MegState::new(
            &basis,
            LearningRateSchedule::Constant { eta: 0.5 },
            InputModeKind::Raw,
        )
        .unwrap();
        let steps = if m == 1 { 7_000 } else { 3_000 };
        for t in 1..=steps {
            let index = rng.uniform_index(basis.len());
            // adversarial raw outcomes, not even consistent with one state
            let n_up = rng.uniform_index(11) as f64;
            let record = MeasurementRecord {
                observable_index: index,
                y_hat: (2.0 * n_up - 10.0) / 10.0,
                shots: Shots::Finite(10),
                t,
            };
            meg.update(&basis, &record, None).unwrap();
            let rho = meg.estimate();
            assert!((rho.as_hermitian().trace() - 1.0).abs() < 1e-10);
            let min = rho.as_hermitian().eigendecompose().eigenvalues[0];
            assert!(min >= -1e-10, "m={m} t={t}: min eigenvalue {min}");
        }
    }
}

#[test]
fn noiseless_divergence_descends_by_at_least_eta_loss() {
    // with the true state as comparator, each noiseless step obeys
    // η·L_t(ρ̂_t) ≤ D(ρ‖ρ̂_t) − D(ρ‖ρ̂_{t+1}) up to numerical slack
    let mut rng = RandomSource::new(1002);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let eta = 0.4;
    let mut meg = MegState::new(
        &basis,
        LearningRateSchedule::Constant { eta },
        InputModeKind::Raw,
    )
    .unwrap();

    let mut divergence = relative_entropy(&rho, &meg.estimate()).unwrap();
    for record in noiseless_stream(&basis, &rho, 2_000, &mut rng) {
        let x = basis.observable(record.observable_index).unwrap();
        let loss = meg_loss(&meg.estimate(), x, record.y_hat);
        meg.update(&basis, &record, None).unwrap();
        let next_divergence = relative_entropy(&rho, &meg.estimate()).unwrap();
        assert!(
            eta * loss <= divergence - next_divergence + 1e-9,
            "t={}: η·L = {} but ΔD = {}",
            record.t,
            eta * loss,
            divergence - next_divergence
        );
        divergence = next_divergence;
    }
}

#[test]
fn running_average_equals_raw_on_noiseless_records() {
    let mut rng = RandomSource::new(1003);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let schedule = LearningRateSchedule::Constant { eta: 0.5 };
    let mut raw = MegState::new(&basis, schedule, InputModeKind::Raw).unwrap();
    let mut averaged = MegState::new(&basis, schedule, InputModeKind::RunningAverage).unwrap();

    for record in noiseless_stream(&basis, &rho, 500, &mut rng) {
        raw.update(&basis, &record, None).unwrap();
        averaged.update(&basis, &record, None).unwrap();
        let a = raw.estimate();
        let b = averaged.estimate();
        for (x, y) in a
            .as_hermitian()
            .data()
            .iter()
            .zip(b.as_hermitian().data().iter())
        {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
}

#[test]
fn ml_inner_iterations_never_decrease_likelihood() {
    let mut rng = RandomSource::new(1004);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let mut ml = MlState::new(&basis, 0.1, 1).unwrap();

    for t in 1..=1_000u64 {
        let index = rng.uniform_index(basis.len());
        let record =
            sample_measurement(&rho, &basis, index, Shots::Finite(100), t, &mut rng).unwrap();
        ml.ingest(&basis, &record).unwrap();
        for inner in 0..10 {
            let before = ml.log_likelihood(&basis);
            ml.refine(&basis).unwrap();
            let after = ml.log_likelihood(&basis);
            assert!(
                after >= before - 1e-10,
                "t={t} inner={inner}: likelihood fell from {before} to {after}"
            );
        }
    }
    assert_eq!(ml.clamp_warnings(), 0);
}

#[test]
fn ml_converges_on_noisy_single_qubit_data() {
    let mut rng = RandomSource::new(1005);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let mut ml = MlState::new(&basis, 0.1, 10).unwrap();
    for t in 1..=3_000u64 {
        let index = rng.uniform_index(basis.len());
        let record =
            sample_measurement(&rho, &basis, index, Shots::Finite(1000), t, &mut rng).unwrap();
        ml.update(&basis, &record).unwrap();
    }
    let err = infidelity(&ml.estimate(), &rho).unwrap();
    assert!(err < 2e-3, "infidelity {err}");
}

#[test]
fn ls_statistical_consistency_on_noisy_data() {
    // seed-pinned consistency run: d = 2, 10⁵ records at N = 1000
    let mut rng = RandomSource::new(1006);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let mut ls = LsState::new(&basis).unwrap();
    for t in 1..=100_000u64 {
        let index = rng.uniform_index(basis.len());
        let record =
            sample_measurement(&rho, &basis, index, Shots::Finite(1000), t, &mut rng).unwrap();
        ls.update(&basis, &record).unwrap();
    }
    let err = infidelity(&ls.estimate(), &rho).unwrap();
    assert!(err < 1e-3, "infidelity {err}");
}

#[test]
fn pgd_running_average_is_comparable_to_meg_running_average() {
    // qualitative parity at a small learning rate; both should reach low
    // infidelity after enough iterations at N = 100
    let mut rng = RandomSource::new(1007);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let mut meg = MegState::new(
        &basis,
        LearningRateSchedule::Constant { eta: 0.5 },
        InputModeKind::RunningAverage,
    )
    .unwrap();
    let mut pgd = PgdState::new(&basis, 0.05, InputModeKind::RunningAverage).unwrap();

    for t in 1..=20_000u64 {
        let index = rng.uniform_index(basis.len());
        let record =
            sample_measurement(&rho, &basis, index, Shots::Finite(100), t, &mut rng).unwrap();
        meg.update(&basis, &record, None).unwrap();
        pgd.update(&basis, &record).unwrap();
    }
    let meg_err = infidelity(&meg.estimate(), &rho).unwrap();
    let pgd_err = infidelity(&pgd.estimate(), &rho).unwrap();
    assert!(meg_err < 0.05, "meg-ra infidelity {meg_err}");
    assert!(pgd_err < 0.05, "pgd-ra infidelity {pgd_err}");
}

#[test]
fn shared_stream_updates_through_the_uniform_front() {
    let mut rng = RandomSource::new(1008);
    let basis = PauliBasis::new(1).unwrap();
    let rho = random_density_matrix(2, None, &mut rng).unwrap();
    let params = EstimatorParams {
        schedule: LearningRateSchedule::Constant { eta: 0.5 },
        pgd_eta: 0.05,
        epsilon: 0.1,
        inner_iterations: 2,
    };
    let mut estimators: Vec<Estimator> = EstimatorKind::ALL
        .iter()
        .map(|&k| Estimator::build(k, &basis, &params).unwrap())
        .collect();

    for t in 1..=300u64 {
        let index = rng.uniform_index(basis.len());
        let record =
            sample_measurement(&rho, &basis, index, Shots::Finite(100), t, &mut rng).unwrap();
        let proxy =
            frobenius_sq_distance(estimators[0].estimate().as_hermitian(), rho.as_hermitian())
                .unwrap();
        for estimator in &mut estimators {
            estimator.process(&basis, &record, Some(proxy)).unwrap();
        }
    }
    for estimator in &estimators {
        let est = estimator.estimate();
        assert!((est.as_hermitian().trace() - 1.0).abs() < 1e-10, "{}", estimator.kind());
        let err = infidelity(&est, &rho).unwrap();
        assert!(err < 0.7, "{} infidelity {err}", estimator.kind());
    }
}
