//! The `renorm` command line: argument parsing, dispatch and exit codes.
//!
//! Exit code 0 means every check passed, 1 that a check failed or a
//! computation broke down, 2 that the flags were invalid.

pub mod abc_cmd;
pub mod args;
pub mod complex;
pub mod config;
pub mod dyn_cmd;
pub mod error;
pub mod ham;
pub mod output;
pub mod tl_cmd;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use complex::{format_complex, parse_complex};
pub use config::{Loop, RunConfig};
pub use error::{CliError, Result};

use args::Command;

/// Runs one command and returns the names of the failing checks.
pub fn execute(cli: &Cli) -> Result<Vec<String>> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Abc(c) => abc_cmd::run(c, cli.seed, out),
        Command::Dynsys(c) => dyn_cmd::run(c, cli.seed, out, cli.format),
        Command::Verify(v) => verify::run(v.suite, v.delta, cli.seed, out),
        Command::Hamiltonian(c) => ham::run(c, cli.seed, out),
        Command::Momenta(m) => ham::momenta(m, cli.seed, out),
        Command::Tl(c) => tl_cmd::run(c, cli.seed, out),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(failed) if failed.is_empty() => 0,
        Ok(failed) => {
            eprintln!("verification failed: {}", failed.join(", "));
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
