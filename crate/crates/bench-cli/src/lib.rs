//! Desk-scale reproduction of the estimator benchmarks: configuration,
//! seeded trial execution, aggregation over random true states,
//! per-update timing, and CSV/SVG artifact emission.
//!
//! Every artifact is a pure function of `(config, build)`: true states and
//! measurement streams derive from `(seed, trial_index)` substreams of a
//! counter-based generator, trials may run on a worker pool but are
//! aggregated in index order, and CSV floats use shortest round-trip
//! formatting — so re-running a configuration reproduces the output
//! byte-for-byte (timing columns aside).

#![forbid(unsafe_code)]

mod config;
mod emit;
mod error;
mod experiment;
mod timing;
mod trial;

pub use config::{ExperimentConfig, ScheduleKind};
pub use emit::{
    emit_check_csv, emit_csv, emit_svg, emit_timing_csv, read_csv, CsvRow, PlotSeries,
};
pub use error::Error;
pub use experiment::{aggregate_traces, run_experiment, AggregateResult, AggregateSeries};
pub use timing::{time_updates, TimingPoint, TimingResult};
pub use trial::{decimation_grid, run_trial, EstimatorTrace, TrialTrace};

pub type Result<T> = std::result::Result<T, Error>;
