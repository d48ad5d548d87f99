//! Command-line front end: single points, config-driven sweeps, preset
//! parameter studies, and config validation.
//!
//! Exit codes: 0 on success, 1 for configuration or invocation problems,
//! 2 for numerical failures (no steady state, degenerate covariance).

use clap::{Parser, Subcommand};
use ringsteer::config::{ConfigBuilder, RunConfig};
use ringsteer::model::{self, ModelError};
use ringsteer::sweep::{self, FigurePreset};
use ringsteer::{measures, SweepSpec};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ringsteer",
    version,
    about = "Steady-state steering and entanglement of two mirrors in a driven ring cavity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the measures at a single parameter point.
    Point {
        /// Config file with `key = value` overrides of the defaults.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Inline override, e.g. `--set r=2.0`; repeatable, applied after
        /// the config file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run the sweep described by a config file and write a CSV.
    Sweep {
        /// Config file; must contain `sweep`, `start`, `stop`, `steps`.
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run a preset study (fig2a, fig2b, fig3a, fig3b) and write a CSV.
    Figure {
        /// Preset name: fig2a, fig2b, fig3a or fig3b.
        preset: String,
        /// Output CSV path.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also write a gnuplot script plotting the CSV.
        #[arg(long = "plot-script", value_name = "FILE")]
        plot_script: Option<PathBuf>,
    },
    /// Check a config file; print errors and warnings.
    Validate {
        /// Config file to check.
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is
            // an invocation problem.
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Point { config, set } => point(config.as_deref(), &set),
        Command::Sweep { config, out } => sweep_from_config(&config, &out),
        Command::Figure {
            preset,
            out,
            plot_script,
        } => figure(&preset, &out, plot_script.as_deref()),
        Command::Validate { config } => validate(&config),
    }
}

/// Assemble a [`RunConfig`] from an optional file plus `--set` overrides.
fn load_config(path: Option<&Path>, sets: &[String]) -> Result<RunConfig, Failure> {
    let mut builder = ConfigBuilder::new();
    if let Some(path) = path {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
        builder
            .parse_str(&text)
            .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    }
    for assignment in sets {
        builder
            .apply_set(assignment)
            .map_err(|e| Failure::config(e.to_string()))?;
    }
    builder.finish().map_err(|e| Failure::config(e.to_string()))
}

/// Reject parameter sets with hard validation errors; let warnings pass
/// through to stderr.
fn check_validity(params: &model::PhysicalParams) -> Result<(), Failure> {
    let report = model::validate_params(params);
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::config(report.errors.join("; ")))
    }
}

fn numerical_failure(e: ModelError) -> Failure {
    match e {
        ModelError::Linalg(_) => Failure::numerical(e.to_string()),
        other => Failure::config(other.to_string()),
    }
}

fn point(config: Option<&Path>, sets: &[String]) -> Result<(), Failure> {
    let run = load_config(config, sets)?;
    check_validity(&run.params)?;
    let cov = model::mechanical_covariance(&run.params).map_err(numerical_failure)?;
    let report = measures::report(&cov).map_err(|e| Failure::numerical(e.to_string()))?;
    println!("g_ab = {:.12e}", report.g_ab);
    println!("g_ba = {:.12e}", report.g_ba);
    println!("e_n = {:.12e}", report.log_negativity);
    println!("nu = {:.12e}", report.min_symplectic);
    println!("regime = {}", report.regime);
    Ok(())
}

fn run_and_write(spec: &SweepSpec, out: &Path) -> Result<(), Failure> {
    check_validity(&spec.base)?;
    let records = sweep::run_sweep(spec).map_err(numerical_failure)?;
    let mut buffer = Vec::new();
    sweep::write_csv(&records, &mut buffer)
        .map_err(|e| Failure::config(format!("cannot format CSV: {e}")))?;
    fs::write(out, buffer)
        .map_err(|e| Failure::config(format!("cannot write {}: {e}", out.display())))?;
    let flagged = records.iter().filter(|r| r.report.is_none()).count();
    eprintln!(
        "wrote {} points to {}{}",
        records.len(),
        out.display(),
        if flagged > 0 {
            format!(" ({flagged} unstable points flagged)")
        } else {
            String::new()
        }
    );
    Ok(())
}

fn sweep_from_config(config: &Path, out: &Path) -> Result<(), Failure> {
    let run = load_config(Some(config), &[])?;
    let spec = run.sweep.ok_or_else(|| {
        Failure::config("config describes no sweep: supply sweep, start, stop, steps")
    })?;
    run_and_write(&spec, out)
}

fn figure(preset: &str, out: &Path, plot_script: Option<&Path>) -> Result<(), Failure> {
    let preset: FigurePreset = preset
        .parse()
        .map_err(|e: sweep::UnknownPreset| Failure::config(e.to_string()))?;
    let spec = sweep::figure_preset(preset);
    run_and_write(&spec, out)?;
    if let Some(script) = plot_script {
        let body = sweep::plot_script(&out.to_string_lossy(), spec.param);
        fs::write(script, body)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", script.display())))?;
    }
    Ok(())
}

fn validate(config: &Path) -> Result<(), Failure> {
    let run = load_config(Some(config), &[])?;
    let report = model::validate_params(&run.params);
    for error in &report.errors {
        println!("error: {error}");
    }
    for warning in &report.warnings {
        println!("warning: {warning}");
    }
    if report.is_ok() {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::config(format!(
            "{} validation error(s)",
            report.errors.len()
        )))
    }
}
