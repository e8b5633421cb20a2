//! Command-line front end for `painleve-core`: single runs, zero scans,
//! grid sweeps and the randomized verification suites.

pub mod args;
pub mod commands;
pub mod output;
pub mod spec;
pub mod verify;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::EXIT_USAGE;
use spec::RunSpec;

/// Parses `argv` and runs the command, returning the process exit code.
/// Diagnostics go to standard error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Integrate(a) => RunSpec::from_args(a).and_then(|s| commands::cmd_integrate(&s)),
        Command::Zeros(a) => RunSpec::from_args(a).and_then(|s| commands::cmd_zeros(&s)),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
