//! `wgmres` command-line harness.
//!
//! Exit status: 0 on success, 2 on configuration errors, 3 on numerical or I/O failures.

mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "wgmres", version, about = "Weighted, deflated GMRES experiments and convergence bounds")]
struct Cli {
    /// Configuration file with `section.key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a configuration key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Write A.mtx, M.mtx, N.mtx and b.vec.
    Problem,
    /// Run GMRES and write trace.csv.
    Solve,
    /// Write bounds.csv and bounds.svg.
    Bounds,
    /// Write fov.csv and fov.svg with the enclosing rectangles.
    Fov,
    /// Write spectrum.csv for the chosen pencil.
    Spectrum,
    /// Join bounds and solver traces across deflation sizes in compare.csv.
    Compare,
    /// Print the effective configuration.
    Config,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric { module: &'static str, err: wgmres::Error },
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric { .. } | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric { module, err } => write!(f, "{module} failed: {err:?}: {err}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::load(cli.config.as_deref(), &cli.set).and_then(|cfg| match cli.command {
        Command::Problem => commands::problem(&cfg),
        Command::Solve => commands::solve(&cfg),
        Command::Bounds => commands::bounds(&cfg),
        Command::Fov => commands::fov(&cfg),
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Compare => commands::compare(&cfg),
        Command::Config => {
            print!("{}", cfg.render());
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
