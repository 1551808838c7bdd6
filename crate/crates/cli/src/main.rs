//! Command-line front end: `sweep` runs randomized trials into a ledger,
//! `fit` trains a surrogate family on a ledger, `zoom` drives the iterative
//! region-shrinking search, and `report` re-emits artifacts for an existing
//! ledger.
//!
//! Flags override values from an optional JSON config file (`--config`), and
//! every randomized command requires an explicit seed from one or the other.

mod commands;
mod config;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{fit, report, sweep, zoom, FitArgs, ReportArgs, SweepArgs, ZoomArgs};

#[derive(Parser)]
#[command(
    name = "hypersurf",
    version,
    about = "Hyperparameter landscape toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run n randomized trials and record a JSON-lines ledger plus figures.
    Sweep(SweepArgs),
    /// Fit a surrogate family (linear, logistic, surface, inverse) to a ledger.
    Fit(FitArgs),
    /// Iteratively shrink the search region with a surrogate-guided zoom.
    Zoom(ZoomArgs),
    /// Emit scatter CSV and binned heatmaps for an existing ledger.
    Report(ReportArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Fit(args) => fit(args),
        Command::Zoom(args) => zoom(args),
        Command::Report(args) => report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
