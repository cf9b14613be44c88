//! Command-line grammar and the `--config` merge.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "shockfront", version, about = "Regular shock reflection: polars, transition angles, envelope checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// key=value file supplying any flag not given on the command line.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// CSV destination; standard output when omitted.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Additional tab-separated plot-data file.
    #[arg(long, global = true, value_name = "PATH")]
    pub plot_data: Option<PathBuf>,

    /// Root tolerance in radians for angle bisection (overrides SHOCKFRONT_TOL).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shock polar for an upstream state at pseudo-Mach `mi` (rho = c = 1).
    Polar(PolarArgs),
    /// Incident shock between the resting region and the incoming flow.
    Incident(IncidentArgs),
    /// Local regular reflection at one wedge angle.
    Reflect(ReflectArgs),
    /// Detachment, sonic and von Neumann angles.
    Transition(TransitionArgs),
    /// Envelope curve from the sonic point of the reflected shock.
    Envelope(EnvelopeArgs),
    /// Feasibility statuses over a (gamma, M_I) grid.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct PolarArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub mi: f64,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct IncidentArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub mi: f64,
    /// Inclination from vertical; nonzero values need `--theta-deg`.
    #[arg(long, default_value_t = 0.0)]
    pub beta_q_deg: f64,
    #[arg(long)]
    pub theta_deg: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReflectArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub mi: f64,
    #[arg(long)]
    pub theta_deg: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta_q_deg: f64,
}

/// A single value or a grid, linear unless `log` is set.
#[derive(Debug, Args)]
pub struct MachGrid {
    #[arg(long, conflicts_with_all = ["mi_min", "mi_max", "mi_steps"])]
    pub mi: Option<f64>,
    #[arg(long, requires_all = ["mi_max", "mi_steps"])]
    pub mi_min: Option<f64>,
    #[arg(long)]
    pub mi_max: Option<f64>,
    #[arg(long)]
    pub mi_steps: Option<usize>,
    /// Logarithmic spacing for the M_I grid.
    #[arg(long, action = ArgAction::SetTrue)]
    pub mi_log: bool,
}

#[derive(Debug, Args)]
pub struct TransitionArgs {
    #[arg(long)]
    pub gamma: f64,
    #[command(flatten)]
    pub grid: MachGrid,
    #[arg(long, default_value_t = 0.0)]
    pub beta_q_deg: f64,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub mi: f64,
    /// Wedge angle; the sonic angle when omitted.
    #[arg(long)]
    pub theta_deg: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub beta_q_deg: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub gamma_min: f64,
    #[arg(long)]
    pub gamma_max: f64,
    #[arg(long)]
    pub gamma_steps: usize,
    #[arg(long)]
    pub mi_min: f64,
    #[arg(long)]
    pub mi_max: f64,
    #[arg(long)]
    pub mi_steps: usize,
    /// Logarithmic spacing in both gamma - 1 and M_I.
    #[arg(long, action = ArgAction::SetTrue)]
    pub log: bool,
}

/// Appends `--key=value` for every config entry whose flag is absent from
/// `argv`. Keys are long flag names; boolean flags take `true` or `false`.
pub fn merge_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let strings: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(path) = config_path(&strings) else { return Ok(argv) };
    let text =
        std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read config file {path}: {e}")))?;
    let cmd = Cli::command();
    let sub_name = subcommand_of(&strings, &cmd).ok_or_else(|| CliError::Usage("a subcommand is required".into()))?;
    let sub = cmd.find_subcommand(&sub_name).expect("subcommand names come from the grammar");

    let mut merged = argv;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{path}:{}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        let flag = format!("--{key}");
        if strings.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        let arg = sub
            .get_arguments()
            .chain(cmd.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()))
            .filter(|a| !matches!(a.get_id().as_str(), "config" | "help" | "version"))
            .ok_or_else(|| CliError::Usage(format!("{path}:{}: unknown key '{key}' for {sub_name}", lineno + 1)))?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value {
                "true" => merged.push(flag.into()),
                "false" => {}
                _ => return Err(CliError::Usage(format!("{path}:{}: '{key}' takes true or false", lineno + 1))),
            }
        } else {
            merged.push(format!("{flag}={value}").into());
        }
    }
    Ok(merged)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn subcommand_of(args: &[String], cmd: &clap::Command) -> Option<String> {
    let takes_value = ["--config", "--output", "-o", "--plot-data", "--tol"];
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if takes_value.contains(&a.as_str()) {
            it.next();
        } else if !a.starts_with('-') {
            return cmd.find_subcommand(a).map(|s| s.get_name().to_string());
        }
    }
    None
}
