//! Command-line front end: argument types, the range parsers, table
//! output and the phase-curve reader, kept in a library so tests and fuzz
//! targets can reach them.

pub mod args;
pub mod commands;
pub mod curve_io;
pub mod error;
pub mod output;
pub mod parse;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::Cli;
pub use commands::Outcome;
pub use error::{CliError, Result};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "TRIDIAG_SPECTRA_THREADS";

/// Configures the global thread pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

/// Runs the command and writes its table; the outcome carries any
/// tolerance miss.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let outcome = commands::run(&cli.command, cli.physical_units)?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.table.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            outcome.table.write(cli.format, stdout.lock())?;
        }
    }
    Ok(outcome)
}
