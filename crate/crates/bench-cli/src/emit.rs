use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pauli_measurements::GENERATOR_NAME;
use theory_checks::SuiteRow;

use crate::{AggregateResult, Error, ExperimentConfig, Result, TimingResult};

pub const RESULT_HEADER: &str =
    "estimator,t,infidelity_mean,infidelity_stderr,frob_sq_mean,frob_sq_stderr,update_ns_mean";

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Emit one CSV per shots value (see [`ExperimentConfig::out_path_for`]).
/// Floats use shortest round-trip formatting, so parsing an emitted file
/// recovers bit-identical values. Returns the written paths.
pub fn emit_csv(
    results: &[AggregateResult],
    config: &ExperimentConfig,
    ) -> Result<Vec<PathBuf>> {
    if results.is_empty() || results.iter().any(|r| r.series.is_empty()) {
        return Err(Error::Config("nothing to emit: no estimator series".into()));
    }
    let hash = config.sha256_hex();
    let mut written = Vec::with_capacity(results.len());
    for result in results {
        let mut text = String::new();
        let _ = writeln!(text, "# config_sha256={hash}");
        let _ = writeln!(text, "# generator={GENERATOR_NAME}");
        let _ = writeln!(text, "# stream=shared");
        let _ = writeln!(text, "# shots={}", result.shots);
        let _ = writeln!(text, "# trials={}", result.trials);
        let _ = writeln!(text, "{RESULT_HEADER}");
        for series in &result.series {
            for (slot, &t) in result.ts.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{}",
                    series.kind,
                    t,
                    series.infidelity_mean[slot],
                    series.infidelity_stderr[slot],
                    series.frob_sq_mean[slot],
                    series.frob_sq_stderr[slot],
                    series.update_ns_mean[slot],
                );
            }
        }
        let path = config.out_path_for(result.shots);
        write_file(&path, &text)?;
        written.push(path);
    }
    Ok(written)
}

/// A parsed row of the result schema.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub estimator: String,
    pub t: u64,
    pub infidelity_mean: f64,
    pub infidelity_stderr: f64,
    pub frob_sq_mean: f64,
    pub frob_sq_stderr: f64,
    pub update_ns_mean: f64,
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_error = |line: usize, message: String| Error::CsvParse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut rows = Vec::new();
    let mut saw_header = false;
    for (number, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != RESULT_HEADER {
                return Err(parse_error(number + 1, format!("unexpected header '{line}'")));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(parse_error(
                number + 1,
                format!("expected 7 fields, got {}", fields.len()),
            ));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|e| parse_error(number + 1, format!("field {i}: {e}")))
        };
        rows.push(CsvRow {
            estimator: fields[0].to_string(),
            t: fields[1]
                .parse()
                .map_err(|e| parse_error(number + 1, format!("t: {e}")))?,
            infidelity_mean: num(2)?,
            infidelity_stderr: num(3)?,
            frob_sq_mean: num(4)?,
            frob_sq_stderr: num(5)?,
            update_ns_mean: num(6)?,
        });
    }
    if !saw_header {
        return Err(parse_error(0, "missing header row".into()));
    }
    Ok(rows)
}

/// One plotted line: a label and (iteration, infidelity) points.
#[derive(Debug, Clone)]
pub struct PlotSeries {
    pub label: String,
    pub points: Vec<(u64, f64)>,
}

impl PlotSeries {
    pub fn from_aggregate(result: &AggregateResult) -> Vec<PlotSeries> {
        result
            .series
            .iter()
            .map(|series| PlotSeries {
                label: series.kind.to_string(),
                points: result
                    .ts
                    .iter()
                    .zip(&series.infidelity_mean)
                    .map(|(&t, &inf)| (t, inf))
                    .collect(),
            })
            .collect()
    }

    pub fn from_csv_rows(rows: &[CsvRow]) -> Vec<PlotSeries> {
        let mut series: Vec<PlotSeries> = Vec::new();
        for row in rows {
            match series.iter_mut().find(|s| s.label == row.estimator) {
                Some(existing) => existing.points.push((row.t, row.infidelity_mean)),
                None => series.push(PlotSeries {
                    label: row.estimator.clone(),
                    points: vec![(row.t, row.infidelity_mean)],
                }),
            }
        }
        series
    }
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const FLOOR: f64 = 1e-12;

/// Log-log polyline chart, one series per estimator, axes labelled
/// "iteration" and "average infidelity".
pub fn emit_svg(series: &[PlotSeries], path: &Path) -> Result<()> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::Config("nothing to plot: no series".into()));
    }

    let mut x_max: f64 = 1.0;
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for &(t, inf) in &s.points {
            x_max = x_max.max(t as f64);
            let y = inf.max(FLOOR);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    let x_lo = 0.0f64; // log10(1)
    let x_hi = x_max.log10().max(x_lo + 1.0);
    let y_lo = y_min.log10().floor();
    let y_hi = (y_max.log10().ceil()).max(y_lo + 1.0);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let map_x = |t: f64| MARGIN_LEFT + (t.log10() - x_lo) / (x_hi - x_lo) * plot_w;
    let map_y = |v: f64| MARGIN_TOP + (y_hi - v.max(FLOOR).log10()) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );

    // decade gridlines and tick labels
    let mut decade = x_lo as i64;
    while (decade as f64) <= x_hi {
        let x = map_x(10f64.powi(decade as i32));
        let _ = writeln!(
            svg,
            "  <line x1=\"{x:.2}\" y1=\"{MARGIN_TOP}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">1e{decade}</text>",
            MARGIN_TOP + plot_h + 18.0
        );
        decade += 1;
    }
    let mut decade = y_lo as i64;
    while (decade as f64) <= y_hi {
        let y = map_y(10f64.powi(decade as i32));
        let _ = writeln!(
            svg,
            "  <line x1=\"{MARGIN_LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"12\">1e{decade}</text>",
            MARGIN_LEFT - 6.0,
            y + 4.0
        );
        decade += 1;
    }

    // axes
    let _ = writeln!(
        svg,
        "  <rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"14\">iteration</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 {:.2})\">average infidelity</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut coords = String::new();
        for &(t, inf) in &s.points {
            let _ = write!(coords, "{:.2},{:.2} ", map_x(t as f64), map_y(inf));
        }
        let _ = writeln!(
            svg,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            coords.trim_end()
        );
        let legend_y = MARGIN_TOP + 18.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{legend_y:.2}\" x2=\"{:.2}\" y2=\"{legend_y:.2}\" stroke=\"{color}\" stroke-width=\"3\"/>",
            MARGIN_LEFT + plot_w - 150.0,
            MARGIN_LEFT + plot_w - 120.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
            MARGIN_LEFT + plot_w - 112.0,
            legend_y + 4.0,
            s.label
        );
    }
    let _ = writeln!(svg, "</svg>");
    write_file(path, &svg)
}

/// Timing table: one row per (estimator, qubit count) with the fitted
/// slope repeated for the estimator.
pub fn emit_timing_csv(results: &[TimingResult], path: &Path) -> Result<()> {
    if results.is_empty() {
        return Err(Error::Config("nothing to emit: no timing results".into()));
    }
    let mut text = String::new();
    let _ = writeln!(text, "# generator={GENERATOR_NAME}");
    let _ = writeln!(
        text,
        "estimator,qubits,dim,reps,mean_ns,median_of_means_ns,resolution_warning,slope"
    );
    for result in results {
        for point in &result.points {
            let _ = writeln!(
                text,
                "{},{},{},{},{},{},{},{}",
                result.kind,
                point.qubits,
                point.dim,
                point.reps,
                point.mean_ns,
                point.median_of_means_ns,
                point.resolution_warning,
                result.slope,
            );
        }
    }
    write_file(path, &text)
}

/// Theory-suite table with max-slack statistics.
pub fn emit_check_csv(rows: &[SuiteRow], path: &Path) -> Result<()> {
    let mut text = String::new();
    let _ = writeln!(text, "check,instances,violations,min_slack,tolerance,passed");
    for row in rows {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            row.check, row.instances, row.violations, row.min_slack, row.tolerance, row.passed,
        );
    }
    write_file(path, &text)
}
