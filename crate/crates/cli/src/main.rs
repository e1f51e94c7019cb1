use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use tridiag_spectra_cli::error::{EXIT_INVALID, EXIT_TOLERANCE};
use tridiag_spectra_cli::{configure_threads, execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap reserves 2 for usage errors; here 2 means a tolerance miss
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INVALID),
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    match execute(&cli) {
        Ok(outcome) => match outcome.miss {
            Some(miss) => {
                eprintln!("tolerance not met: {miss}");
                ExitCode::from(EXIT_TOLERANCE)
            }
            None => ExitCode::SUCCESS,
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
