use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvqe::pipeline::{run_experiment, RunConfig, Sweep};
use cvqe::Error;

#[derive(Parser)]
#[command(name = "cvqe", version, about = "Guided-sampling VQE experiments on a statevector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter grid and write CSV tables.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// FCIDUMP fixture (repeatable); replaces the configured list.
    #[arg(long)]
    fcidump: Vec<PathBuf>,
    #[arg(long)]
    shots: Option<u64>,
    /// Master seed (repeatable).
    #[arg(long)]
    seed: Vec<u64>,
    /// Evolution time in atomic units (repeatable).
    #[arg(long)]
    time: Vec<f64>,
    /// Energy cutoff in Hartree (repeatable).
    #[arg(long)]
    cutoff: Vec<f64>,
    /// Trotter steps K.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    sweep: Option<Sweep>,
    /// Discard samples outside the Hartree-Fock particle-number sector.
    #[arg(long)]
    sector_filter: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(a: RunArgs) -> cvqe::Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::new(Vec::new()),
    };
    if !a.fcidump.is_empty() {
        cfg.fixtures = a.fcidump;
    }
    if let Some(s) = a.shots {
        cfg.shots = s;
    }
    if !a.seed.is_empty() {
        cfg.seeds = a.seed;
    }
    if !a.time.is_empty() {
        cfg.times = a.time;
    }
    if !a.cutoff.is_empty() {
        cfg.cutoffs = a.cutoff;
    }
    if let Some(k) = a.steps {
        cfg.steps = k;
    }
    if a.sweep.is_some() {
        cfg.sweep = a.sweep;
    }
    cfg.sector_filter |= a.sector_filter;
    if a.out.is_some() {
        cfg.out_dir = a.out;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        Error::Io { .. }
        | Error::MissingSidecar(_)
        | Error::MalformedHeader(_)
        | Error::MalformedLine { .. }
        | Error::IndexOutOfRange { .. }
        | Error::InvalidMetadata(_)
        | Error::NonHermitian(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let Command::Run(args) = Cli::parse().command;
    let result = build_config(args).and_then(|cfg| run_experiment(&cfg));
    match result {
        Ok(records) => {
            println!("{:>8} {:>6} {:>6} {:>4} {:>6} {:>14} {:>11}", "geometry", "T", "eps", "rep", "dim", "E*", "dE*");
            for r in &records {
                println!(
                    "{:>8} {:>6} {:>6} {:>4} {:>6} {:>14.8} {:>11.3e}",
                    r.geometry, r.time, r.cutoff, r.replicate, r.dim, r.e_opt, r.delta_e
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
