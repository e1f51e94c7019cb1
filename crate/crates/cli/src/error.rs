use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tridiag_spectra::Error),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("cannot read phase-shift curve: {0}")]
    Curve(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit status for a computation that finished but missed its own
/// tolerance target.
pub const EXIT_TOLERANCE: u8 = 2;
pub const EXIT_INVALID: u8 = 1;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use tridiag_spectra::Error as E;
        match self {
            Self::Core(E::Accuracy { .. } | E::NoConvergence) => EXIT_TOLERANCE,
            _ => EXIT_INVALID,
        }
    }
}
