//! The `fusion-weave` command line: JSON problems in, reports out.
//!
//! Exit codes: 0 when the analysed property holds, 1 when the analysis completed and
//! the property is false, 2 for usage, parse, validation, cap and hypothesis errors,
//! and 3 for numerical failures or failed invariant checks.

mod problem;
mod report;
mod run;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use problem::{parse_problem, DemoName, LocalFramesSpec, MemberSpec, Problem, ProblemFile, ProblemOptions};
pub use report::{Check, Outcome, Report};
pub use run::{
    resolve_options, run, Command, Overrides, CHECK_TOL, EXIT_NUMERICAL, EXIT_OK, EXIT_PROPERTY_FALSE, EXIT_USAGE,
    SHARP_TOL,
};

use crate::error::Error;
use crate::weaving::Sampling;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON {0}")]
    Parse(String),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse(_) | CliError::Invalid(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                Error::NoConvergence { .. }
                | Error::NotInvertible
                | Error::NotSymmetric { .. }
                | Error::NotOrthonormal { .. }
                | Error::NotSquare { .. }
                | Error::NotAFusionFrame { .. } => EXIT_NUMERICAL,
                _ => EXIT_USAGE,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fusion-weave",
    version,
    about = "Bounds, weavings and Riesz tests for fusion frames in R^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Optimal fusion frame bounds of V (and W when given)
    Bounds(AnalysisArgs),
    /// Universal bounds over all weavings of V and W
    Weave(AnalysisArgs),
    /// Whether every weaving is a fusion Riesz basis
    Riesz(AnalysisArgs),
    /// Compare the subspace weaving with the weaving of lifted local frames
    Lift(AnalysisArgs),
    /// Run a compiled-in example and assert its known values
    Demo(DemoArgs),
}

#[derive(Debug, clap::Args)]
pub struct AnalysisArgs {
    /// Problem file; standard input when absent or `-`
    #[arg(conflicts_with = "demo")]
    pub input: Option<PathBuf>,
    /// Use a compiled-in problem instead of a file
    #[arg(long, value_enum)]
    pub demo: Option<DemoName>,
    /// Index-set size of the compiled-in problem
    #[arg(long, requires = "demo")]
    pub n: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, clap::Args)]
pub struct DemoArgs {
    #[arg(value_enum)]
    pub name: DemoName,
    /// Index-set size (example1 defaults to 4, example2 to 3)
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Relative frame tolerance: a lower bound counts as positive above tol * max(1, upper)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest index set enumerated exhaustively
    #[arg(long)]
    pub pattern_cap: Option<usize>,
    /// Sample this many random patterns when the index set exceeds the cap
    #[arg(long, requires = "seed")]
    pub sample: Option<usize>,
    /// Seed for pattern sampling
    #[arg(long, requires = "sample")]
    pub seed: Option<u64>,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
    /// Include the per-pattern bounds table
    #[arg(long)]
    pub per_pattern: bool,
    /// Worker threads: a positive count or `max`
    #[arg(long, value_parser = parse_threads)]
    pub threads: Option<usize>,
    /// Add wall-clock time to the report
    #[arg(long)]
    pub timing: bool,
}

fn parse_threads(s: &str) -> Result<usize, String> {
    if s == "max" {
        return Ok(std::thread::available_parallelism().map_or(1, |n| n.get()));
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or `max`, got `{s}`")),
        Ok(n) => Ok(n),
    }
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            tol: self.tol,
            pattern_cap: self.pattern_cap,
            sampling: self.sample.zip(self.seed).map(|(count, seed)| Sampling { count, seed }),
            per_pattern: self.per_pattern,
            threads: self.threads,
        }
    }
}

fn load(input: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<(String, Problem), CliError> {
    let (label, text) = match input {
        Some(path) if path.as_os_str() != "-" => {
            let label = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: label.clone(),
                message: e.to_string(),
            })?;
            (label, text)
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| CliError::Io {
                path: "standard input".into(),
                message: e.to_string(),
            })?;
            ("-".to_string(), text)
        }
    };
    Ok((label, parse_problem(&text)?))
}

fn demo_input(name: DemoName, n: Option<usize>) -> Result<(String, Problem), CliError> {
    let n = n.unwrap_or(name.default_size());
    Ok((format!("demo:{}:n={n}", name.as_str()), Problem::demo(name, n)?))
}

/// Runs a parsed command line, reading the problem from `stdin` when no file is named.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let start = Instant::now();
    let (command, (input, problem), common) = match &cli.command {
        CliCommand::Demo(a) => (Command::Demo(a.name), demo_input(a.name, a.n)?, &a.common),
        CliCommand::Bounds(a) | CliCommand::Weave(a) | CliCommand::Riesz(a) | CliCommand::Lift(a) => {
            let command = match &cli.command {
                CliCommand::Bounds(_) => Command::Bounds,
                CliCommand::Weave(_) => Command::Weave,
                CliCommand::Riesz(_) => Command::Riesz,
                _ => Command::Lift,
            };
            let source = match a.demo {
                Some(name) => demo_input(name, a.n)?,
                None => load(a.input.as_ref(), stdin)?,
            };
            (command, source, &a.common)
        }
    };
    let options = resolve_options(&problem.options, &common.overrides())?;
    let mut report = run(command, &input, &problem, &options)?;
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        CliCommand::Demo(a) => a.common.json,
        CliCommand::Bounds(a) | CliCommand::Weave(a) | CliCommand::Riesz(a) | CliCommand::Lift(a) => a.common.json,
    }
}

/// Process entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match execute(&cli, &mut std::io::stdin().lock()) {
        Ok(report) => {
            if wants_json(&cli) {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_human());
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!(
                    "check failed: {} (violation {:?}, tolerance {:?})",
                    c.name, c.violation, c.tolerance
                );
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
