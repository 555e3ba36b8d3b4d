//! Command-line surface over `superorbit-core`.

pub mod args;
pub mod commands;
pub mod output;

use std::fs;
use std::path::Path;

use args::{Cli, Command, Format};
use commands::CliError;
use output::{render, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "SUPERORBIT_THREADS";

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Orbits(a) => commands::orbits(a),
        Command::Verify(a) => commands::verify(a),
        Command::Parabolic(a) => commands::parabolic(a),
        Command::Induced(a) => commands::induced(a),
        Command::Table(a) => commands::table(a),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(report) => emit(&report, cli.format, cli.out.as_deref()),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Writes a finished report and maps its verdict to an exit code.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> i32 {
    let text = render(report, format);
    let written = match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if report.failed {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    }
}
