use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use paybid::config::{Scenario, ScenarioConfig};
use paybid::report::{
    load_trace_inputs, run_trace_report, Format, Table, TraceOptions, TraceReport,
};
use paybid::sweep::{run_point, run_sweep, SweepSpec};
use paybid::trace::OutcomeOptions;
use paybid::Cents;

#[derive(Parser)]
#[command(
    name = "paybid",
    version,
    about = "Pay-per-bid auction models, simulations and trace analytics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario at one parameter point.
    Analyze(PointArgs),
    /// Evaluate a scenario along a grid of one parameter.
    Sweep(SweepArgs),
    /// Like `analyze`, with Monte Carlo columns.
    Simulate(PointArgs),
    /// Reports over outcome tables and probe traces.
    Trace(TraceArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: Option<String>,
    /// Flat TOML file with scenario parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parameter override `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// Monte Carlo trials (`simulate` defaults to 100000).
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    param: String,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    #[arg(long, default_value_t = 0)]
    trials: u64,
}

#[derive(Args)]
struct TraceArgs {
    /// margins, aggression, duels, active or bidpacks.
    #[arg(long)]
    report: TraceReport,
    /// Outcome table files.
    #[arg(long = "outcomes")]
    outcomes: Vec<PathBuf>,
    /// Probe trace files.
    #[arg(long = "traces")]
    traces: Vec<PathBuf>,
    /// Outcome files start with a header row.
    #[arg(long)]
    header: bool,
    /// Outcome field delimiter (default tab).
    #[arg(long, default_value = "\t")]
    delimiter: String,
    /// Assumed bid fee in dollars.
    #[arg(long, default_value = "0.60")]
    fee: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

fn load_config(common: &Common) -> Result<ScenarioConfig> {
    let mut config = match &common.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ScenarioConfig::from_toml(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(name) = &common.scenario {
        config.scenario = name.parse::<Scenario>()?;
    }
    for assignment in &common.set {
        config.apply(assignment)?;
    }
    Ok(config)
}

fn emit(table: &Table, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let text = table.render(format);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Analyze(args) => {
            let config = load_config(&args.common)?;
            let table = run_point(
                "analyze",
                &config,
                args.trials.unwrap_or(0),
                args.common.seed,
            )?;
            emit(&table, args.common.format, args.common.out.as_ref())
        }
        Command::Simulate(args) => {
            let config = load_config(&args.common)?;
            let trials = args.trials.unwrap_or(100_000);
            if trials == 0 {
                bail!("simulate needs at least one trial");
            }
            let table = run_point("simulate", &config, trials, args.common.seed)?;
            emit(&table, args.common.format, args.common.out.as_ref())
        }
        Command::Sweep(args) => {
            let spec = SweepSpec {
                config: load_config(&args.common)?,
                param: args.param,
                from: args.from,
                to: args.to,
                step: args.step,
                trials: args.trials,
                seed: args.common.seed,
            };
            emit(
                &run_sweep(&spec)?,
                args.common.format,
                args.common.out.as_ref(),
            )
        }
        Command::Trace(args) => {
            let delimiter = match args.delimiter.as_bytes() {
                [d] => *d,
                _ => bail!("delimiter must be a single byte"),
            };
            if args.outcomes.is_empty() && args.traces.is_empty() {
                bail!("no input files: pass --outcomes and/or --traces");
            }
            let options = OutcomeOptions {
                delimiter,
                has_header: args.header,
            };
            let inputs = load_trace_inputs(&args.outcomes, &args.traces, options)?;
            for d in &inputs.diagnostics {
                eprintln!("warning: {d}");
            }
            let report_options = TraceOptions {
                bid_fee: Cents::parse_dollars(&args.fee).context("--fee")?,
                ..TraceOptions::default()
            };
            let table = run_trace_report(args.report, &inputs, &report_options)?;
            emit(&table, args.format, args.out.as_ref())
        }
    }
}
