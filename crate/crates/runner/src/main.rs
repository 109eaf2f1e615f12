use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qrf_runner::catalog;
use qrf_runner::report::write_reports;
use qrf_runner::{run_config, ExperimentId, RunnerError, ScenarioConfig};

/// Exit status for configuration errors; failed claims exit with 1.
const CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "qrf", version, about = "Run the Galilean frame-change experiment catalogue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run experiments and write report.csv and summary.json.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON scenario file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Experiment to run (E1..E7 or `all`); repeatable. Overrides the config list.
    #[arg(long = "experiment", short = 'e')]
    experiments: Vec<String>,
    /// Parameter override `key=value`, rationals as `p/q`, lists comma separated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output directory.
    #[arg(long, env = "QRF_OUT_DIR")]
    out: Option<PathBuf>,
    /// Seed for the randomized sweeps.
    #[arg(long)]
    seed: Option<u64>,
    /// Print a named Hamiltonian and exit.
    #[arg(long, value_name = "NAME")]
    show_hamiltonian: Option<String>,
}

fn resolve(args: &RunArgs) -> Result<ScenarioConfig, RunnerError> {
    let mut cfg = match &args.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if !args.experiments.is_empty() {
        cfg.experiments.clear();
        for e in &args.experiments {
            if e.eq_ignore_ascii_case("all") {
                cfg.experiments = ExperimentId::ALL.to_vec();
            } else {
                cfg.experiments.push(e.parse()?);
            }
        }
    }
    for pair in &args.sets {
        cfg.params.set_pair(pair)?;
    }
    cfg.params.validate()?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
    Ok(cfg)
}

fn run(args: RunArgs) -> Result<bool, RunnerError> {
    let cfg = resolve(&args)?;
    if let Some(name) = &args.show_hamiltonian {
        println!("{}", catalog::show(name, &cfg.params)?);
        return Ok(true);
    }
    let reports = run_config(&cfg)?;
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("qrf-out"));
    write_reports(&out, &reports)?;
    let mut ok = true;
    for r in &reports {
        let failed = r.failures().count();
        println!(
            "{} {:<45} {:>3} claims  {:>3} failed  {:>8.3} s",
            r.experiment,
            r.title,
            r.claims.len(),
            failed,
            r.seconds
        );
        for c in r.failures() {
            println!("    FAIL {}: expected {}, measured {} ({})", c.name, c.expected, c.measured, c.tolerance);
        }
        ok &= r.passed();
    }
    println!("reports written to {}", out.display());
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let Command::Run(args) = Cli::parse().command;
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e @ RunnerError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR)
        }
        Err(RunnerError::Core(e)) if matches!(e, qrf_core::Error::InvalidParameter(_) | qrf_core::Error::PacketTooWide(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
