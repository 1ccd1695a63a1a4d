//! Harness-level contracts: determinism, decimation invariance, the shared
//! initialization point, artifact round-trips, and CLI exit codes.

use std::path::PathBuf;
use std::process::Command;

use bench_cli::{
    decimation_grid, emit_csv, emit_svg, read_csv, run_experiment, run_trial, ExperimentConfig,
    PlotSeries,
};
use estimators::EstimatorKind;
use pauli_measurements::{PauliBasis, Shots};
use quantum_core::{infidelity, DensityMatrix};

fn tiny_config() -> ExperimentConfig {
    ExperimentConfig {
        qubits: 1,
        shots: vec![Shots::Finite(100)],
        iterations: 500,
        states: 2,
        estimators: vec![
            EstimatorKind::Meg,
            EstimatorKind::MegRa,
            EstimatorKind::Ml,
            EstimatorKind::Ls,
            EstimatorKind::Pgd,
        ],
        eta: 0.5,
        ..Default::default()
    }
}

#[test]
fn trials_are_bit_deterministic() {
    let config = tiny_config();
    let basis = PauliBasis::new(config.qubits).unwrap();
    let a = run_trial(&config, &basis, config.shots[0], 3).unwrap();
    let b = run_trial(&config, &basis, config.shots[0], 3).unwrap();
    assert!(a.metrics_eq(&b));
    let c = run_trial(&config, &basis, config.shots[0], 4).unwrap();
    assert!(!a.metrics_eq(&c), "different trials must differ");
}

#[test]
fn decimation_stride_does_not_alter_recorded_states() {
    let fine_config = tiny_config();
    let coarse_config = ExperimentConfig {
        stride: 10,
        ..tiny_config()
    };
    let basis = PauliBasis::new(1).unwrap();
    let fine = run_trial(&fine_config, &basis, Shots::Finite(100), 0).unwrap();
    let coarse = run_trial(&coarse_config, &basis, Shots::Finite(100), 0).unwrap();
    for (slot, &t) in coarse.ts.iter().enumerate() {
        let fine_slot = fine.ts.iter().position(|&x| x == t).expect("nested grids");
        for (a, b) in coarse.estimators.iter().zip(&fine.estimators) {
            assert_eq!(
                a.infidelity[slot].to_bits(),
                b.infidelity[fine_slot].to_bits(),
                "estimator {} at t={t}",
                a.kind
            );
        }
    }
}

#[test]
fn first_point_is_the_common_initialization() {
    let config = tiny_config();
    let basis = PauliBasis::new(config.qubits).unwrap();
    let trace = run_trial(&config, &basis, config.shots[0], 1).unwrap();
    let rho = bench_cli_trial_state(&config, &basis, 1);
    let expected = infidelity(&DensityMatrix::maximally_mixed(2), &rho).unwrap();
    assert_eq!(trace.ts[0], 1);
    for series in &trace.estimators {
        assert!(
            (series.infidelity[0] - expected).abs() < 1e-14,
            "estimator {} starts at {}",
            series.kind,
            series.infidelity[0]
        );
    }
}

// regenerate the trial's true state the same way the harness does
fn bench_cli_trial_state(
    config: &ExperimentConfig,
    basis: &PauliBasis,
    trial_index: u64,
) -> DensityMatrix {
    let mut rng = pauli_measurements::RandomSource::stream(config.seed, trial_index * 4);
    pauli_measurements::random_density_matrix(basis.dim(), None, &mut rng).unwrap()
}

#[test]
fn csv_round_trips_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        out: dir.path().join("roundtrip.csv"),
        ..tiny_config()
    };
    let results = run_experiment(&config).unwrap();
    let paths = emit_csv(&results, &config).unwrap();
    assert_eq!(paths.len(), 1);

    let text = std::fs::read_to_string(&paths[0]).unwrap();
    assert!(text.starts_with(&format!("# config_sha256={}", config.sha256_hex())));
    assert!(text.contains("# generator=chacha12"));

    let rows = read_csv(&paths[0]).unwrap();
    let result = &results[0];
    let mut cursor = 0;
    for series in &result.series {
        for (slot, &t) in result.ts.iter().enumerate() {
            let row = &rows[cursor];
            cursor += 1;
            assert_eq!(row.estimator, series.kind.to_string());
            assert_eq!(row.t, t);
            assert_eq!(row.infidelity_mean.to_bits(), series.infidelity_mean[slot].to_bits());
            assert_eq!(row.frob_sq_mean.to_bits(), series.frob_sq_mean[slot].to_bits());
            assert_eq!(
                row.infidelity_stderr.to_bits(),
                series.infidelity_stderr[slot].to_bits()
            );
        }
    }
    assert_eq!(cursor, rows.len());
}

#[test]
fn empty_estimator_set_is_rejected_before_write() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        estimators: vec![],
        out: dir.path().join("never.csv"),
        ..tiny_config()
    };
    assert!(run_experiment(&config).is_err());
    assert!(!config.out.exists());
}

#[test]
fn unwritable_path_error_names_the_path() {
    let config = ExperimentConfig {
        iterations: 8,
        states: 1,
        out: PathBuf::from("/nonexistent-dir/x/y.csv"),
        ..tiny_config()
    };
    let results = run_experiment(&config).unwrap();
    let err = emit_csv(&results, &config).unwrap_err();
    assert!(err.to_string().contains("/nonexistent-dir/x/y.csv"));
}

#[test]
fn svg_is_structurally_sound() {
    let dir = tempfile::tempdir().unwrap();
    let config = tiny_config();
    let results = run_experiment(&config).unwrap();
    let series = PlotSeries::from_aggregate(&results[0]);
    let path = dir.path().join("plot.svg");
    emit_svg(&series, &path).unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("<?xml version=\"1.0\""));
    assert_eq!(text.matches("<svg").count(), 1);
    assert_eq!(text.matches("</svg>").count(), 1);
    assert_eq!(
        text.matches("<polyline").count(),
        config.estimators.len(),
        "one polyline per estimator"
    );
    assert!(text.contains(">iteration</text>"));
    assert!(text.contains(">average infidelity</text>"));
    // every opened tag family is closed or self-closed
    for tag in ["line", "rect", "text", "polyline"] {
        let opened = text.matches(&format!("<{tag} ")).count();
        let self_closed = text.matches("/>").count();
        let closed = text.matches(&format!("</{tag}>")).count();
        assert!(opened <= self_closed + closed, "tag {tag} left open");
    }
}

#[test]
fn multi_shots_runs_write_one_file_each() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        shots: vec![Shots::Finite(10), Shots::Infinite],
        estimators: vec![EstimatorKind::Meg, EstimatorKind::Ls],
        iterations: 64,
        states: 1,
        out: dir.path().join("sweep.csv"),
        ..tiny_config()
    };
    let results = run_experiment(&config).unwrap();
    let paths = emit_csv(&results, &config).unwrap();
    assert_eq!(paths.len(), 2);
    assert!(paths[0].ends_with("sweep_N10.csv"));
    assert!(paths[1].ends_with("sweep_Ninf.csv"));
    assert!(paths.iter().all(|p| p.exists()));
}

// --- CLI surface ---------------------------------------------------------

fn megbench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_megbench"))
}

#[test]
fn cli_run_and_plot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cli.csv");
    let status = megbench()
        .args([
            "run",
            "--qubits",
            "1",
            "--shots",
            "100",
            "--iterations",
            "200",
            "--states",
            "2",
            "--estimators",
            "meg,ls",
            "--seed",
            "9",
            "--out",
        ])
        .arg(&csv)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(csv.exists());

    let svg = dir.path().join("cli.svg");
    let status = megbench()
        .arg("plot")
        .arg("--input")
        .arg(&csv)
        .arg("--out")
        .arg(&svg)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(svg.exists());
}

#[test]
fn cli_validation_errors_exit_one() {
    // unknown estimator name is a validation problem
    let status = megbench()
        .args(["run", "--estimators", "bogus"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // ml with infinite shots is rejected before any compute
    let status = megbench()
        .args(["run", "--estimators", "ml", "--shots", "inf", "--iterations", "10"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn cli_runtime_errors_exit_two() {
    let status = megbench()
        .args(["plot", "--input", "/no/such/file.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn cli_config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let out_path = dir.path().join("from_config.csv");
    let json = serde_json::json!({
        "qubits": 1,
        "shots": [50],
        "iterations": 100,
        "states": 1,
        "estimators": ["meg"],
        "out": out_path,
    });
    std::fs::write(&config_path, serde_json::to_string_pretty(&json).unwrap()).unwrap();

    // flag overrides the file's iteration count; file supplies the rest
    let status = megbench()
        .arg("run")
        .arg("--config")
        .arg(&config_path)
        .args(["--iterations", "64"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let rows = read_csv(&out_path).unwrap();
    assert_eq!(rows.last().unwrap().t, 64);
}

#[test]
fn grid_helper_matches_trial_ts() {
    let config = tiny_config();
    let basis = PauliBasis::new(config.qubits).unwrap();
    let trace = run_trial(&config, &basis, config.shots[0], 0).unwrap();
    assert_eq!(trace.ts, decimation_grid(config.iterations, config.stride));
}
