use std::process::ExitCode;

use clap::Parser;
use superorbit_cli::{args::Cli, run, EXIT_USAGE, THREADS_VAR};

fn main() -> ExitCode {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let Ok(threads) = v.trim().parse::<usize>() else {
            eprintln!("error: {THREADS_VAR} must be a thread count, got `{v}`");
            return ExitCode::from(EXIT_USAGE as u8);
        };
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("pool built once");
    }
    let cli = Cli::parse();
    ExitCode::from(run(&cli) as u8)
}
