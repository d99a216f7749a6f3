//! Argument handling shared by the binary and the tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::Value;

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::presets::preset;
use crate::scenario::execute;
use crate::table::Table;

/// Wishful persuasion scenarios, figure presets and parameter sweeps.
///
/// Results are written as CSV. Exit status 2 signals an invalid
/// configuration, 3 a numerical failure.
#[derive(Debug, Parser)]
#[command(name = "persuade", version)]
pub struct Args {
    /// One of: binary, health, voting, finite, investor.
    pub scenario: String,
    /// JSON scenario configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Start from a named preset instead of the scenario defaults.
    #[arg(long)]
    pub preset: Option<String>,
    /// Write the CSV here (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override a parameter, e.g. `--set rho=2` or `--set betas=[0.2,0.5,0.8]`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Self-deception ability ρ
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Prior probability of the high state (binary, voting)
    #[arg(long, allow_hyphen_values = true)]
    pub mu0: Option<f64>,
    /// Binary payoffs `u(0,low),u(0,high),u(1,low),u(1,high)`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub payoffs: Option<Vec<f64>>,
    /// Illness severity in the health scenario
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Treatment cost in the health scenario.
    #[arg(long, allow_hyphen_values = true)]
    pub cost: Option<f64>,
    /// Treatment efficacy in the health scenario.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Low-risk probability of illness in the health scenario
    #[arg(long, allow_hyphen_values = true)]
    pub theta_low: Option<f64>,
    /// High-risk probability of illness in the health scenario
    #[arg(long, allow_hyphen_values = true)]
    pub theta_high: Option<f64>,
    /// Voter weights, comma separated and ascending.
    #[arg(long, value_delimiter = ',')]
    pub betas: Option<Vec<f64>>,
    /// Ignore any sweep in the config and evaluate a single point.
    #[arg(long)]
    pub no_sweep: bool,
    /// Print the resolved configuration as JSON instead of running it.
    #[arg(long)]
    pub print_config: bool,
}

fn number(x: f64) -> CliResult<Value> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| CliError::Config(format!("{x} is not a finite number")))
}

fn numbers(xs: &[f64]) -> CliResult<Value> {
    Ok(Value::Array(xs.iter().map(|&x| number(x)).collect::<CliResult<_>>()?))
}

/// Builds the configuration described by the arguments.
pub fn resolve(args: &Args) -> CliResult<ScenarioConfig> {
    let mut config = match (&args.config, &args.preset) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("--config and --preset are mutually exclusive".into()))
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            ScenarioConfig::from_json(&text)?
        }
        (None, Some(name)) => preset(name)?,
        (None, None) => ScenarioConfig::default_for(&args.scenario)?,
    };
    if config.name() != args.scenario {
        return Err(CliError::Config(format!(
            "configuration is for scenario `{}`, not `{}`",
            config.name(),
            args.scenario
        )));
    }
    let flags: [(&str, Option<Value>); 9] = [
        ("rho", args.rho.map(number).transpose()?),
        ("mu0", args.mu0.map(number).transpose()?),
        ("payoffs", args.payoffs.as_deref().map(numbers).transpose()?),
        ("sigma", args.sigma.map(number).transpose()?),
        ("c", args.cost.map(number).transpose()?),
        ("alpha", args.alpha.map(number).transpose()?),
        ("theta_low", args.theta_low.map(number).transpose()?),
        ("theta_high", args.theta_high.map(number).transpose()?),
        ("betas", args.betas.as_deref().map(numbers).transpose()?),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.apply_override(&format!("{key}={v}"))?;
        }
    }
    for o in &args.overrides {
        config.apply_override(o)?;
    }
    if args.no_sweep {
        config = config.without_sweep();
    }
    Ok(config)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Resolves, evaluates and emits; returns the table that was written.
pub fn main_with<W: Write>(args: &Args, stdout: &mut W) -> CliResult<Option<Table>> {
    let config = resolve(args)?;
    if args.print_config {
        writeln!(stdout, "{}", config.to_json())?;
        return Ok(None);
    }
    let table = execute(&config)?;
    let csv = table.to_csv_string();
    match &args.out {
        Some(path) => write_atomic(path, csv.as_bytes())?,
        None => stdout.write_all(csv.as_bytes())?,
    }
    Ok(Some(table))
}
