//! Command-line front end: dataset and record file formats, argument
//! parsing and the subcommands.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;
pub mod records;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, Result};

/// Parses `argv`, runs the command and returns the process exit code.
///
/// 0 on success, 1 for unparseable input, 2 for usage, I/O, dimension and
/// other precondition failures, 3 for numeric singularities.
pub fn run_from_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_logging(cli.verbose);
    match commands::run(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .try_init();
}
