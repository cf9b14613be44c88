//! Command-line front end: argument handling, CSV and plot-data emission.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod table;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};

/// Failures mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write {0}")]
    Unwritable(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Unwritable(_) => 4,
        }
    }
}

/// Runs one invocation and returns the exit code. Diagnostics go to the
/// error stream; data goes to the CSV destination only.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match execute(argv.into_iter().map(Into::into).collect()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("shockfront: {e}");
            e.exit_code()
        }
    }
}

fn execute(argv: Vec<OsString>) -> Result<i32, CliError> {
    let argv = args::merge_config(argv)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let tol = commands::resolve_tolerance(cli.tol, std::env::var("SHOCKFRONT_TOL").ok())?;
    let (name, outcome) = match &cli.command {
        Command::Polar(a) => ("polar", commands::polar(a)?),
        Command::Incident(a) => ("incident", commands::incident(a)?),
        Command::Reflect(a) => ("reflect", commands::reflect(a)?),
        Command::Transition(a) => ("transition", commands::transition(a, tol)?),
        Command::Envelope(a) => ("envelope", commands::envelope(a, tol)?),
        Command::Scan(a) => ("scan", commands::scan(a, tol)?),
    };

    let mut echo: Vec<String> = outcome.params.iter().map(|(k, v)| format!("--{k}={v}")).collect();
    if matches!(name, "transition" | "envelope" | "scan") {
        echo.push(format!("--tol={tol:e}"));
    }
    let provenance = format!("{name} {} shockfront-{}", echo.join(" "), env!("CARGO_PKG_VERSION"));

    // build everything before touching the file system
    let plot_text = cli.plot_data.as_ref().map(|_| outcome.plot.to_plot_data()).transpose()?;
    table::write_to(cli.output.as_deref(), &outcome.csv.to_csv(&provenance))?;
    if let (Some(path), Some(text)) = (&cli.plot_data, plot_text) {
        table::write_to(Some(path), &text)?;
    }
    match outcome.domain_failure {
        Some(msg) => Err(CliError::Domain(msg)),
        None => Ok(0),
    }
}
