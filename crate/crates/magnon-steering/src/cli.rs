//! Command-line front end: `point`, `sweep`, `figure`, `thresholds`, and
//! `validate` subcommands over the shared config pipeline.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 configuration
//! error (bad flags, bad file, invalid physics), 2 stable-operating-point
//! violation (the requested spec is dynamically unstable; the stability
//! margin is reported), 3 output I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::config::{ConfigError, FileConfig};
use crate::experiments::{
    evaluate_point, fig2_sweep, fig3_fig4_ratio_sweep, fig5_dissipation_sweep,
    fig6_temperature_threshold, max_stable_gain, sweep_1d, AxisSpec, ExperimentError, MagnonMode,
    PointOutcome, RatioSweep, SweepGrid, ThresholdMetric,
};
use crate::measures::MetricsRecord;
use crate::plot::{self, Series};
use crate::report::{
    point_csv, ratio_csv, sweep_csv, PeakSummary, RunSummary, ThresholdSummary,
};

/// Steady-state squeezing, entanglement, and EPR steering of a cavity
/// coupled to two magnon modes.
#[derive(Debug, Parser)]
#[command(
    name = "magsteer",
    version,
    about = "Steady-state quantum correlations of a driven cavity-magnon system",
    long_about = "Computes steady-state squeezing, entanglement, and EPR steering of two \
magnon modes coupled to a driven microwave cavity.\n\n\
Units: config keys carry their unit in the name — omega_*_ghz (GHz), \
kappa_a_mhz (MHz), *_rel (units of kappa_a), *_rad (radians), \
temperature_mk (millikelvin). All outputs are written as CSV with a \
self-describing header comment."
)]
pub struct Cli {
    /// TOML config file; omitted sections fall back to the reference point.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Flat key=value overrides applied after the config file (repeatable),
    /// e.g. --set squeeze_r=1.5 --set lambda_opa_rel=0.49.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Output directory for CSV, summary, and plot files.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    pub out: PathBuf,

    /// Also render an SVG plot next to each CSV.
    #[arg(long, global = true)]
    pub plot: bool,

    /// Grid resolution override (points per axis).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(usize))]
    pub grid: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operating point and print all metrics.
    Point {
        /// Squeezing parameter of the driving field (shortcut for
        /// --set squeeze_r=...).
        #[arg(long)]
        r: Option<f64>,
        /// Amplifier gain in units of kappa_a (shortcut for
        /// --set lambda_opa_rel=...).
        #[arg(long)]
        lambda: Option<f64>,
        /// Temperature in millikelvin (shortcut for --set temperature_mk=...).
        #[arg(long)]
        temp: Option<f64>,
    },
    /// Sweep one config key over a linear range and write the CSV.
    Sweep {
        /// Config key to sweep (e.g. squeeze_r, lambda_opa_rel,
        /// temperature_mk).
        #[arg(long)]
        param: String,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        /// Number of samples (defaults to the standard grid resolution).
        #[arg(long)]
        points: Option<usize>,
    },
    /// Reproduce one of the standard result figures (2–6).
    Figure {
        /// 2 = squeezing–gain map, 3 = coupling-ratio curves,
        /// 4 = amplification comparison, 5 = dissipation sweeps,
        /// 6 = temperature thresholds.
        #[arg(value_parser = clap::value_parser!(u8).range(2..=6))]
        id: u8,
    },
    /// Critical temperatures and the maximum stable amplifier gain.
    Thresholds,
    /// Check the configuration and report every violation.
    Validate,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("operating point is not stable (stability margin {margin:+.6e} κ_a)")]
    Unstable { margin: f64 },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Unstable { .. } => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(err: ExperimentError) -> Self {
        match err {
            ExperimentError::Unstable { margin } | ExperimentError::Unsolvable { margin } => {
                CliError::Unstable { margin }
            }
            ExperimentError::NoThresholdInRange { .. } => CliError::Config(ConfigError::Invalid {
                violations: vec![err.to_string()],
            }),
        }
    }
}

/// Default points per 1D axis; 2D maps use the square of none of this —
/// they get their own default below.
const DEFAULT_GRID_1D: usize = 101;
const DEFAULT_GRID_2D: usize = 61;

/// Figure defaults for the drive parameters when the config leaves them at
/// zero (a zero squeezed drive or amplifier gain would make most panels
/// featureless). An explicit nonzero config value always wins.
fn figure_base(config: &FileConfig, default_r: f64, default_lambda: f64) -> FileConfig {
    let mut base = config.clone();
    if base.drive.squeeze_r == 0.0 {
        base.drive.squeeze_r = default_r;
    }
    if base.drive.lambda_opa_rel == 0.0 {
        base.drive.lambda_opa_rel = default_lambda;
    }
    base
}

/// Assembles the file config plus `--set` overrides.
fn load_config(cli: &Cli) -> Result<FileConfig, ConfigError> {
    let mut config = match &cli.config {
        Some(path) => FileConfig::from_path(path)?,
        None => FileConfig::default(),
    };
    for arg in &cli.set {
        config.apply_set_arg(arg)?;
    }
    Ok(config)
}

fn write_output(out_dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    std::fs::write(&path, content)?;
    println!("wrote {}", path.display());
    Ok(path)
}

/// Human-readable block for a single evaluated point.
pub fn point_report(record: &MetricsRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "stability margin  {:+.6e} κ_a  ({})",
        record.margin,
        if record.stable { "stable" } else { "unstable" }
    );
    let _ = writeln!(out, "squeezing    S_X1  {:+.6e} dB", record.s_x1);
    let _ = writeln!(out, "             S_Y1  {:+.6e} dB", record.s_y1);
    let _ = writeln!(out, "             S_X2  {:+.6e} dB", record.s_x2);
    let _ = writeln!(out, "             S_Y2  {:+.6e} dB", record.s_y2);
    let _ = writeln!(out, "entanglement E12   {:+.6e}", record.e12);
    let _ = writeln!(out, "steering     G12   {:+.6e}", record.g12);
    let _ = writeln!(out, "             G21   {:+.6e}", record.g21);
    let _ = writeln!(out, "             GS    {:+.6e}", record.gs);
    let _ = writeln!(out, "populations  n_a   {:+.6e} quanta", record.pop_a);
    let _ = writeln!(out, "             n_1   {:+.6e} quanta", record.pop_1);
    let _ = writeln!(out, "             n_2   {:+.6e} quanta", record.pop_2);
    out
}

/// Executes a parsed command line. I/O goes to stdout/stderr and `--out`.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Point { r, lambda, temp } => run_point(cli, *r, *lambda, *temp),
        Command::Sweep {
            param,
            min,
            max,
            points,
        } => run_sweep(cli, param, *min, *max, *points),
        Command::Figure { id } => run_figure(cli, *id),
        Command::Thresholds => run_thresholds(cli),
        Command::Validate => run_validate(cli),
    }
}

fn run_point(cli: &Cli, r: Option<f64>, lambda: Option<f64>, temp: Option<f64>) -> Result<(), CliError> {
    let mut config = load_config(cli)?;
    if let Some(r) = r {
        config.set("squeeze_r", r)?;
    }
    if let Some(lambda) = lambda {
        config.set("lambda_opa_rel", lambda)?;
    }
    if let Some(temp) = temp {
        config.set("temperature_mk", temp)?;
    }
    let spec = config.to_valid_spec()?;
    match evaluate_point(&spec) {
        PointOutcome::Metrics(record) => {
            print!("{}", point_report(&record));
            write_output(&cli.out, "point.csv", &point_csv(&record, &config.resolved_json()))?;
            Ok(())
        }
        PointOutcome::Unstable { margin } | PointOutcome::Marginal { margin } => {
            Err(CliError::Unstable { margin })
        }
    }
}

fn run_sweep(
    cli: &Cli,
    param: &str,
    min: f64,
    max: f64,
    points: Option<usize>,
) -> Result<(), CliError> {
    let config = load_config(cli)?;
    // Surface unknown keys and invalid endpoint values before the sweep runs.
    for endpoint in [min, max] {
        let mut probe = config.clone();
        probe.set(param, endpoint)?;
        probe.to_valid_spec()?;
    }
    let points = points.or(cli.grid).unwrap_or(DEFAULT_GRID_1D);
    let axis = AxisSpec::new(param, min, max, points);
    let config_for_point = config.clone();
    let param_owned = param.to_string();
    let grid = sweep_1d(axis, move |value| {
        let mut point_config = config_for_point.clone();
        point_config
            .set(&param_owned, value)
            .expect("key already validated");
        point_config.to_spec()
    });
    let name = format!("sweep_{param}.csv");
    write_output(&cli.out, &name, &sweep_csv(&grid, &config.resolved_json()))?;
    if cli.plot {
        let svg = sweep_chart(&format!("sweep over {param}"), param, &grid);
        write_output(&cli.out, &format!("sweep_{param}.svg"), &svg)?;
    }
    Ok(())
}

/// Correlation curves (clamped values) for a 1D sweep.
fn sweep_chart(title: &str, x_label: &str, grid: &SweepGrid) -> String {
    let curve = |f: fn(&MetricsRecord) -> f64| -> Vec<(f64, f64)> {
        grid.records().map(|(coords, rec)| (coords[0], f(rec))).collect()
    };
    let series = vec![
        Series::new("E12", curve(|r| r.e12)),
        Series::new("G12", curve(|r| r.g12)),
        Series::new("G21", curve(|r| r.g21)),
        Series::new("GS", curve(|r| r.gs)),
    ];
    plot::line_chart(title, x_label, "metric value", &series)
}

fn run_figure(cli: &Cli, id: u8) -> Result<(), CliError> {
    let config = load_config(cli)?;
    match id {
        2 => figure_2(cli, &config),
        3 => figure_3(cli, &config),
        4 => figure_4(cli, &config),
        5 => figure_5(cli, &config),
        6 => figure_6(cli, &config),
        _ => unreachable!("clap range parser admits 2..=6"),
    }
}

fn figure_2(cli: &Cli, config: &FileConfig) -> Result<(), CliError> {
    let n = cli.grid.unwrap_or(DEFAULT_GRID_2D);
    let base = config.to_valid_spec()?;
    let grid = fig2_sweep(
        &base,
        AxisSpec::new("squeeze_r", 0.0, 2.0, n),
        AxisSpec::new("lambda_opa_rel", 0.0, 0.49, n),
    );
    write_output(&cli.out, "fig2.csv", &sweep_csv(&grid, &config.resolved_json()))?;
    if cli.plot {
        let x = grid.axes[0].values();
        let y = grid.axes[1].values();
        let pick = |f: fn(&MetricsRecord) -> f64| -> Vec<Option<f64>> {
            grid.points
                .iter()
                .map(|p| p.outcome.metrics().map(f))
                .collect()
        };
        for (name, title, f) in [
            ("fig2_e12.svg", "entanglement E12", (|r| r.e12) as fn(&MetricsRecord) -> f64),
            ("fig2_steering.svg", "steering G12", |r| r.g12),
        ] {
            let svg = plot::heatmap(title, "squeeze r", "lambda (kappa_a)", &x, &y, &pick(f));
            write_output(&cli.out, name, &svg)?;
        }
    }
    Ok(())
}

fn ratio_axis(cli: &Cli) -> AxisSpec {
    AxisSpec::new("ratio", 0.5, 2.0, cli.grid.unwrap_or(DEFAULT_GRID_1D))
}

fn ratio_chart(title: &str, sweep: &RatioSweep) -> String {
    sweep_chart(title, "gamma_2 / gamma_1", &sweep.grid)
}

fn figure_3(cli: &Cli, config: &FileConfig) -> Result<(), CliError> {
    let config = figure_base(config, 1.0, 0.49);
    let base = config.to_valid_spec()?;
    let sweep = fig3_fig4_ratio_sweep(&base, ratio_axis(cli), true);
    let json = config.resolved_json();
    write_output(&cli.out, "fig3.csv", &ratio_csv(&sweep, &json))?;
    let mut summary = RunSummary::new("3", &json);
    summary.peaks = Some(PeakSummary::from_sweep(&sweep));
    write_output(&cli.out, "fig3_summary.json", &summary.to_json())?;
    if cli.plot {
        write_output(&cli.out, "fig3.svg", &ratio_chart("steering vs coupling ratio", &sweep))?;
    }
    Ok(())
}

fn figure_4(cli: &Cli, config: &FileConfig) -> Result<(), CliError> {
    let config = figure_base(config, 1.0, 0.49);
    let base = config.to_valid_spec()?;
    let axis = ratio_axis(cli);
    let without = fig3_fig4_ratio_sweep(&base, axis.clone(), false);
    let with = fig3_fig4_ratio_sweep(&base, axis, true);
    let json = config.resolved_json();
    write_output(&cli.out, "fig4a.csv", &ratio_csv(&without, &json))?;
    write_output(&cli.out, "fig4b.csv", &ratio_csv(&with, &json))?;
    let mut summary = RunSummary::new("4", &json);
    summary.peaks = Some(PeakSummary::from_sweep(&with));
    summary.peaks_without_opa = Some(PeakSummary::from_sweep(&without));
    write_output(&cli.out, "fig4_summary.json", &summary.to_json())?;
    if cli.plot {
        write_output(&cli.out, "fig4a.svg", &ratio_chart("without amplifier", &without))?;
        write_output(&cli.out, "fig4b.svg", &ratio_chart("with amplifier", &with))?;
    }
    Ok(())
}

fn figure_5(cli: &Cli, config: &FileConfig) -> Result<(), CliError> {
    let config = figure_base(config, 1.0, 0.49);
    let base = config.to_valid_spec()?;
    let n = cli.grid.unwrap_or(DEFAULT_GRID_1D);
    let json = config.resolved_json();
    for (which, axis_name) in [(MagnonMode::One, "kappa_1_rel"), (MagnonMode::Two, "kappa_2_rel")]
    {
        for gamma_2 in [3.0, 6.0] {
            let grid = fig5_dissipation_sweep(
                &base,
                AxisSpec::new(axis_name, 0.1, 1.0, n),
                which,
                gamma_2,
            );
            let stem = format!("fig5_{axis_name}_gamma{gamma_2:.0}");
            write_output(&cli.out, &format!("{stem}.csv"), &sweep_csv(&grid, &json))?;
            if cli.plot {
                let title = format!("dissipation sweep ({axis_name}, gamma_2 = {gamma_2:.0})");
                write_output(
                    &cli.out,
                    &format!("{stem}.svg"),
                    &sweep_chart(&title, axis_name, &grid),
                )?;
            }
        }
    }
    Ok(())
}

fn figure_6(cli: &Cli, config: &FileConfig) -> Result<(), CliError> {
    let config = figure_base(config, 2.0, 0.49);
    let base = config.to_valid_spec()?;
    let json = config.resolved_json();

    // Metric-vs-temperature curves for the figure itself.
    let n = cli.grid.unwrap_or(DEFAULT_GRID_1D);
    let curve_base = base.clone();
    let grid = sweep_1d(AxisSpec::new("temperature_mk", 20.0, 1000.0, n), move |mk| {
        curve_base.clone().with_temperature(mk / 1000.0)
    });
    write_output(&cli.out, "fig6_temperature.csv", &sweep_csv(&grid, &json))?;

    let threshold = |metric| -> Result<Option<f64>, CliError> {
        match fig6_temperature_threshold(&base, metric, base.squeeze_r, base.lambda_opa) {
            Ok(kelvin) => Ok(Some(kelvin * 1000.0)),
            Err(ExperimentError::NoThresholdInRange { .. }) => Ok(None),
            Err(other) => Err(other.into()),
        }
    };
    let thresholds = ThresholdSummary {
        steering_mk: threshold(ThresholdMetric::Steering)?,
        entanglement_mk: threshold(ThresholdMetric::Entanglement)?,
    };
    print_thresholds(&thresholds);
    let mut summary = RunSummary::new("6", &json);
    summary.thresholds = Some(thresholds);
    write_output(&cli.out, "fig6_summary.json", &summary.to_json())?;
    if cli.plot {
        write_output(
            &cli.out,
            "fig6.svg",
            &sweep_chart("correlations vs temperature", "temperature (mK)", &grid),
        )?;
    }
    Ok(())
}

fn print_thresholds(thresholds: &ThresholdSummary) {
    let show = |label: &str, value: Option<f64>| match value {
        Some(mk) => println!("{label} threshold: {mk:.1} mK"),
        None => println!("{label} threshold: none in search range"),
    };
    show("steering", thresholds.steering_mk);
    show("entanglement", thresholds.entanglement_mk);
}

fn run_thresholds(cli: &Cli) -> Result<(), CliError> {
    let config = figure_base(&load_config(cli)?, 2.0, 0.49);
    let base = config.to_valid_spec()?;
    let json = config.resolved_json();
    let threshold = |metric| -> Result<Option<f64>, CliError> {
        match fig6_temperature_threshold(&base, metric, base.squeeze_r, base.lambda_opa) {
            Ok(kelvin) => Ok(Some(kelvin * 1000.0)),
            Err(ExperimentError::NoThresholdInRange { .. }) => Ok(None),
            Err(other) => Err(other.into()),
        }
    };
    let thresholds = ThresholdSummary {
        steering_mk: threshold(ThresholdMetric::Steering)?,
        entanglement_mk: threshold(ThresholdMetric::Entanglement)?,
    };
    let gain = max_stable_gain(&base);
    print_thresholds(&thresholds);
    println!("maximum stable gain: {gain:.4} κ_a");
    let mut summary = RunSummary::new("thresholds", &json);
    summary.thresholds = Some(thresholds);
    summary.max_stable_gain = Some(gain);
    write_output(&cli.out, "thresholds.json", &summary.to_json())?;
    Ok(())
}

fn run_validate(cli: &Cli) -> Result<(), CliError> {
    // Parse problems and unknown keys are themselves violations this command
    // exists to report; they surface through the error display like any
    // physics violation.
    let config = load_config(cli)?;
    let violations = config.to_spec().validate();
    if violations.is_empty() {
        println!("ok");
        Ok(())
    } else {
        Err(ConfigError::Invalid { violations }.into())
    }
}
