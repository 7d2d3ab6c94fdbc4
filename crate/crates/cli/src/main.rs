//! `sticks`: exact and simulated polygon probabilities from the command line.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing identity, 2 for usage and
//! domain errors, 3 when no closed form exists, 4 when a size limit is hit.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli.command) {
        Ok(outcome) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.stdout.trim_end());
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            eprintln!("sticks: {failure}");
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
