//! `ela` — drive the benchmark-function classification pipeline: sample
//! designs, compute landscape features, search for minimal feature
//! portfolios, validate them, and render reports.

mod commands;
mod config;
mod error;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Ctx;
use config::{Config, Overrides};

#[derive(Parser)]
#[command(
    name = "ela",
    version,
    about = "Landscape-feature classification pipeline for the 24 noiseless benchmark functions",
    after_help = "Exit codes: 0 success, 1 gate not met (select), 2 usage error, 3 data error."
)]
struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed for sampling and validation splits.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Problem dimensions (comma-separated, strictly ascending).
    #[arg(long, global = true, value_delimiter = ',', value_name = "D,...")]
    dim: Option<Vec<usize>>,
    /// Sample sizes as multiples of the dimension (comma-separated).
    #[arg(
        long = "samples-per-dim",
        global = true,
        value_delimiter = ',',
        value_name = "M,..."
    )]
    samples_per_dim: Option<Vec<usize>>,
    /// Repetitions per (function, instance).
    #[arg(long, global = true, value_name = "R")]
    reps: Option<u32>,
    /// Instance identifiers (comma-separated, strictly ascending).
    #[arg(long, global = true, value_delimiter = ',', value_name = "I,...")]
    instances: Option<Vec<u32>>,
    /// Classifiers to use: mj, dt, knn (repeat or comma-separate).
    #[arg(long, global = true, value_delimiter = ',', value_name = "KIND")]
    classifier: Option<Vec<String>>,
    /// Train/test protocol: subsample, multi, or loio.
    #[arg(long, global = true, value_name = "NAME")]
    protocol: Option<String>,
    /// Feature subset for `validate` (comma-separated names).
    #[arg(long, global = true, value_delimiter = ',', value_name = "F,...")]
    subset: Option<Vec<String>>,
    /// Output directory root.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one design CSV per (function, instance, repetition).
    Sample,
    /// Compute feature files, from design files when present.
    Features,
    /// Exhaustively search minimal feature portfolios against the gate.
    Select,
    /// Score the configured feature subset under the chosen protocol.
    Validate,
    /// Render tables and SVG boxplots from existing artifacts.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ela: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> error::CliResult<()> {
    let over = Overrides {
        seed: cli.seed,
        dimensions: cli.dim,
        samples_per_dim: cli.samples_per_dim,
        repetitions: cli.reps,
        instances: cli.instances,
        classifiers: cli.classifier,
        protocol: cli.protocol,
        subset: cli.subset,
        out: cli.out,
    };
    let cfg = Config::resolve(cli.config.as_deref(), &over)?;
    if cfg.experiment.workers > 0 {
        ela_core::exec::configure_workers(cfg.experiment.workers);
    }
    let ctx = Ctx::new(cfg)?;
    match cli.command {
        Command::Sample => commands::sample::run(&ctx),
        Command::Features => commands::features::run(&ctx),
        Command::Select => commands::select::run(&ctx),
        Command::Validate => commands::validate::run(&ctx),
        Command::Report => commands::report::run(&ctx),
    }
}
