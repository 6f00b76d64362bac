//! Command-line front end: scenario configuration, execution, CSV emission,
//! and self-contained SVG line plots.
//!
//! Exit codes: 0 success, 1 numeric failure (partial results are written
//! with flagged points), 2 configuration error.

mod catalog;
mod config;
mod scenario;
mod svg;
mod table;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    match run(cli) {
        Ok(scenario::Outcome::Clean) => ExitCode::SUCCESS,
        Ok(scenario::Outcome::Flagged { points }) => {
            if !quiet {
                eprintln!(
                    "warning: {points} grid point(s) flagged as singular; partial results written"
                );
            }
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<scenario::Outcome, CliError> {
    let scenario_config = config::parse_config(cli)?;
    scenario::run_scenario(scenario_config)
}
