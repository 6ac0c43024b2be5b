//! Command-line front end for `clifford-phase-core`: reproducible runs of
//! every verification and the reduced solver, with JSON, CSV, JSON-lines and
//! binary matrix artifacts, and the acceptance suite.

pub mod acceptance;
pub mod artifact;
pub mod commands;
pub mod config;
pub mod error;

use artifact::{write_text, Artifact, Timing, Versions};
use clap::Parser;
use config::{Cli, Format, RunConfig};
use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use std::io::Write;
use std::time::Instant;

/// Execute a resolved configuration and build its artifact.
pub fn run_config(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let start = Instant::now();
    let report = commands::execute(cfg)?;
    let seconds = cfg.wall_clock.then(|| start.elapsed().as_secs_f64());
    let passed = report.checks.iter().all(|c| c.passed);
    let artifact = Artifact {
        command: cfg.command.name(),
        config: cfg.clone(),
        versions: Versions::current(),
        grid: report.grid,
        timing: Timing {
            wall_clock: cfg.wall_clock,
            seconds,
        },
        results: report.results,
        checks: report.checks,
        passed,
    };
    let text = report.summary.unwrap_or_else(|| artifact.to_text());
    match &cfg.out {
        Some(path) => {
            write_text(path, &artifact.to_json())?;
            print!("{text}");
        }
        None => match cfg.format {
            Format::Json => print!("{}", artifact.to_json()),
            Format::Text => print!("{text}"),
        },
    }
    let _ = std::io::stdout().flush();
    Ok(artifact)
}

/// Parse `args` (program name first), run, and return the exit code.
///
/// Failures print a one-line JSON record `{"error": {"kind", "message"}}`
/// on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("");
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.to_json());
            return EXIT_USAGE;
        }
    };
    let outcome = RunConfig::resolve(cli.command, cli.flags).and_then(|cfg| run_config(&cfg));
    match outcome {
        Ok(a) if a.passed => EXIT_OK,
        Ok(_) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
