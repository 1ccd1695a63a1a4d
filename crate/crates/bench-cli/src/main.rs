use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bench_cli::{
    emit_check_csv, emit_csv, emit_svg, emit_timing_csv, read_csv, run_experiment, time_updates,
    Error, ExperimentConfig, PlotSeries, ScheduleKind,
};
use estimators::EstimatorKind;
use pauli_measurements::Shots;
use theory_checks::{run_full_suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "megbench",
    about = "Online quantum-state estimation benchmarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and emit per-iteration CSV results.
    Run(RunArgs),
    /// Run the full theory-check suite and emit its pass/fail table.
    Check(CheckArgs),
    /// Time estimator updates across qubit counts and fit complexity slopes.
    Time(TimeArgs),
    /// Render an emitted result CSV as a log-log SVG chart.
    Plot(PlotArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    qubits: Option<usize>,
    /// Comma list of shot counts; `inf` for noiseless.
    #[arg(long, value_delimiter = ',')]
    shots: Option<Vec<Shots>>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    states: Option<usize>,
    /// Comma list from {meg, meg-ra, ml, ls, pgd, pgd-ra}.
    #[arg(long, value_delimiter = ',')]
    estimators: Option<Vec<EstimatorKind>>,
    /// Learning-rate schedule: constant | powerlaw | oracle.
    #[arg(long)]
    schedule: Option<ScheduleKind>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    eta0: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long = "inner-iters")]
    inner_iters: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stride: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Randomized instances per inequality family.
    #[arg(long, default_value_t = 10_000)]
    instances: u64,
    #[arg(long, default_value = "checks.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct TimeArgs {
    /// Comma list of estimators to time.
    #[arg(long, value_delimiter = ',', default_values_t = [EstimatorKind::Meg, EstimatorKind::Ml, EstimatorKind::Ls])]
    estimators: Vec<EstimatorKind>,
    #[arg(long = "qubits-min", default_value_t = 2)]
    qubits_min: usize,
    #[arg(long = "qubits-max", default_value_t = 6)]
    qubits_max: usize,
    /// Warm measurements per dimension (at least 100).
    #[arg(long, default_value_t = 100)]
    reps: u32,
    /// Shots per simulated record.
    #[arg(long, default_value = "100")]
    shots: Shots,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long = "inner-iters")]
    inner_iters: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "timing.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    /// Result CSV produced by `run`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "results.svg")]
    out: PathBuf,
}

fn merged_config(args: &RunArgs) -> Result<ExperimentConfig, Error> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = args.qubits {
        config.qubits = v;
    }
    if let Some(v) = &args.shots {
        config.shots = v.clone();
    }
    if let Some(v) = args.iterations {
        config.iterations = v;
    }
    if let Some(v) = args.states {
        config.states = v;
    }
    if let Some(v) = &args.estimators {
        config.estimators = v.clone();
    }
    if let Some(v) = args.schedule {
        config.schedule = v;
    }
    if let Some(v) = args.eta {
        config.eta = v;
    }
    if let Some(v) = args.eta0 {
        config.eta0 = v;
    }
    if let Some(v) = args.beta {
        config.beta = v;
    }
    if let Some(v) = args.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = args.inner_iters {
        config.inner_iters = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.stride {
        config.stride = v;
    }
    if let Some(v) = &args.out {
        config.out = v.clone();
    }
    Ok(config)
}

fn run(args: &RunArgs) -> Result<(), Error> {
    let config = merged_config(args)?;
    config.validate()?;
    eprintln!(
        "running {} estimator(s), {} qubit(s), {} iterations x {} states, shots {:?}",
        config.estimators.len(),
        config.qubits,
        config.iterations,
        config.states,
        config.shots.iter().map(|s| s.to_string()).collect::<Vec<_>>()
    );
    let results = run_experiment(&config)?;
    let paths = emit_csv(&results, &config)?;
    for path in paths {
        println!("{}", path.display());
    }
    Ok(())
}

fn check(args: &CheckArgs) -> Result<(), Error> {
    let rows = run_full_suite(&SuiteConfig {
        seed: args.seed,
        instances: args.instances,
    })?;
    emit_check_csv(&rows, &args.out)?;
    let mut all_passed = true;
    for row in &rows {
        println!(
            "{:>4} {:<28} instances={:<7} violations={:<5} min_slack={:+.3e}",
            if row.passed { "PASS" } else { "FAIL" },
            row.check,
            row.instances,
            row.violations,
            row.min_slack,
        );
        all_passed &= row.passed;
    }
    println!("{}", args.out.display());
    if !all_passed {
        return Err(Error::Config("theory-check suite reported failures".into()));
    }
    Ok(())
}

fn time(args: &TimeArgs) -> Result<(), Error> {
    if args.qubits_min == 0 || args.qubits_min > args.qubits_max {
        return Err(Error::Config(format!(
            "invalid qubit range {}..={}",
            args.qubits_min, args.qubits_max
        )));
    }
    let mut config = ExperimentConfig {
        seed: args.seed,
        ..Default::default()
    };
    if let Some(v) = args.eta {
        config.eta = v;
    }
    if let Some(v) = args.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = args.inner_iters {
        config.inner_iters = v;
    }

    let mut results = Vec::new();
    for &kind in &args.estimators {
        eprintln!(
            "timing {kind} over m = {}..={}",
            args.qubits_min, args.qubits_max
        );
        let result = time_updates(
            kind,
            args.qubits_min..=args.qubits_max,
            args.reps,
            &config,
            args.shots,
        )?;
        for point in &result.points {
            println!(
                "{} m={} d={} mean={:.0}ns mom={:.0}ns{}",
                kind,
                point.qubits,
                point.dim,
                point.mean_ns,
                point.median_of_means_ns,
                if point.resolution_warning {
                    " [resolution warning]"
                } else {
                    ""
                },
            );
        }
        println!("{} slope={:.3}", kind, result.slope);
        results.push(result);
    }
    emit_timing_csv(&results, &args.out)?;
    println!("{}", args.out.display());
    Ok(())
}

fn plot(args: &PlotArgs) -> Result<(), Error> {
    let rows = read_csv(&args.input)?;
    let series = PlotSeries::from_csv_rows(&rows);
    emit_svg(&series, &args.out)?;
    println!("{}", args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are not failures
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match &cli.command {
        Command::Run(args) => run(args),
        Command::Check(args) => check(args),
        Command::Time(args) => time(args),
        Command::Plot(args) => plot(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
