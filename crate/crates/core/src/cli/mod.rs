//! Batch front end: configuration files, CSV artifacts and subcommand
//! dispatch with exit codes 0 (success), 2 (configuration) and 3
//! (numerical failure).

pub mod commands;
pub mod config;
pub mod csv;

pub use commands::{CheckLine, Outcome};
pub use config::{parse_complex, Probe, RunConfig};
pub use csv::CsvTable;

use crate::error::{Error, Result};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

/// The subcommands; each takes the path of a configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Boundary curve, V along a ray and the droplet validation report.
    Geometry,
    /// Fixed-point iteration, jet coefficients and budget.
    Solve,
    /// Predicted fields at the probes.
    Predict,
    /// Moments, orthonormal polynomials and leading coefficients.
    Oracle,
    /// Berezin zeros, density and potential at the source point.
    Berezin,
    /// Predictions against the oracle, with a summary table.
    Compare,
    /// Budget diagnostics.
    Budget,
}

#[derive(clap::Args, Debug)]
struct ConfigArg {
    config: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Invocation {
    /// Boundary curve, V along a ray and the droplet validation report.
    Geometry(ConfigArg),
    /// Fixed-point iteration, jet coefficients and budget.
    Solve(ConfigArg),
    /// Predicted fields at the probes.
    Predict(ConfigArg),
    /// Moments, orthonormal polynomials and leading coefficients.
    Oracle(ConfigArg),
    /// Berezin zeros, density and potential at the source point.
    Berezin(ConfigArg),
    /// Predictions against the oracle, with a summary table.
    Compare(ConfigArg),
    /// Budget diagnostics.
    Budget(ConfigArg),
}

#[derive(Parser, Debug)]
#[command(name = "droplet", version, about = "Planar orthogonal polynomial asymptotics and their oracle")]
struct Args {
    #[command(subcommand)]
    invocation: Invocation,
}

impl Invocation {
    fn split(self) -> (Command, PathBuf) {
        match self {
            Invocation::Geometry(a) => (Command::Geometry, a.config),
            Invocation::Solve(a) => (Command::Solve, a.config),
            Invocation::Predict(a) => (Command::Predict, a.config),
            Invocation::Oracle(a) => (Command::Oracle, a.config),
            Invocation::Berezin(a) => (Command::Berezin, a.config),
            Invocation::Compare(a) => (Command::Compare, a.config),
            Invocation::Budget(a) => (Command::Budget, a.config),
        }
    }
}

/// Runs one subcommand on a parsed configuration.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Geometry => commands::geometry(cfg),
        Command::Solve => commands::solve(cfg),
        Command::Predict => commands::predict(cfg),
        Command::Oracle => commands::oracle(cfg),
        Command::Berezin => commands::berezin(cfg),
        Command::Compare => commands::compare(cfg),
        Command::Budget => commands::budget(cfg),
    }
}

fn report(outcome: &Outcome) -> Result<()> {
    for (k, v) in &outcome.info {
        println!("{k} = {v}");
    }
    for c in &outcome.checks {
        println!("{}", c.summary());
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    let failed: Vec<&str> = outcome.failed().iter().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Numerical(format!("failed checks: {}", failed.join(", "))))
    }
}

/// Loads the configuration, runs the subcommand, prints one line per check
/// and returns the exit code.
pub fn run(config: &Path, command: Command) -> i32 {
    let result = RunConfig::load(config).and_then(|cfg| execute(command, &cfg)).and_then(|o| report(&o));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses command line arguments and runs; the exit code is returned.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(a) => {
            let (command, config) = a.invocation.split();
            run(&config, command)
        }
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}
