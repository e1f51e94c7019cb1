use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;
use crate::parse::{Interval, LevelRange};

#[derive(Debug, Parser)]
#[command(
    name = "tridiag-spectra",
    version,
    about = "Spectra, bound states, resonances and phase shifts of the screened Coulomb potential with a barrier"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report energies as E = ελ²/2 instead of ε = 2E/λ².
    #[arg(long, global = true)]
    pub physical_units: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PotentialArgs {
    /// Range parameter λ (inverse length).
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Dimensionless strength C, with V0 = -λ²C.
    #[arg(long = "C", allow_negative_numbers = true)]
    pub strength: f64,
    /// Shape parameter γ.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    Gamma,
    #[value(name = "C")]
    Strength,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample V(r) and report its landmarks.
    Potential {
        #[command(flatten)]
        potential: PotentialArgs,
        /// Radii `lo..hi`.
        #[arg(long, default_value = "0.01..10")]
        r_range: Interval,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Critical strengths C_n^±(ε), or the strength spectrum at one γ.
    Critical {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Matrix size.
        #[arg(long = "N", default_value_t = 200)]
        size: usize,
    },
    /// Bound S-wave energies from the inverted strength spectrum.
    Spectrum {
        #[command(flatten)]
        potential: PotentialArgs,
        /// Continued-fraction orders; several values give a convergence report.
        #[arg(long = "M", value_delimiter = ',', default_value = "50")]
        orders: Vec<usize>,
        /// Matrix size.
        #[arg(long = "N", default_value_t = 100)]
        size: usize,
        /// Energy grid points per trace.
        #[arg(long)]
        seed_grid: Option<usize>,
    },
    /// Complex-rotation spectrum with bound, resonance and cut labels.
    Resonances {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long = "l", default_value_t = 0)]
        l: u32,
        #[arg(long)]
        theta: Option<f64>,
        /// Basis scale (inverse length).
        #[arg(long)]
        eta: Option<f64>,
        /// Basis size.
        #[arg(long = "N")]
        size: Option<usize>,
    },
    /// Scattering phase shift at one energy or over a range.
    Phaseshift {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long = "C", allow_negative_numbers = true, required_unless_present = "from_csv")]
        strength: Option<f64>,
        #[arg(long, required_unless_present = "from_csv")]
        gamma: Option<f64>,
        #[arg(long = "l", default_value_t = 0)]
        l: u32,
        /// Single energy; overrides the range.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eps_min: f64,
        #[arg(long, default_value_t = 8.0)]
        eps_max: f64,
        /// Initial samples before adaptive densification.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Fit a resonance to the curve.
        #[arg(long)]
        find_resonance: bool,
        /// Re-read a curve written earlier instead of computing one.
        #[arg(long, conflicts_with_all = ["strength", "gamma", "eps"])]
        from_csv: Option<PathBuf>,
    },
    /// Normalized S-wave bound states on a radial grid.
    Wavefunction {
        #[command(flatten)]
        potential: PotentialArgs,
        /// Levels, e.g. `0..3` (inclusive) or `2`.
        #[arg(long, default_value = "0")]
        level: LevelRange,
        #[arg(long, default_value = "0.01..15")]
        r_range: Interval,
        #[arg(long, default_value_t = 300)]
        points: usize,
        /// Expansion terms.
        #[arg(long = "N", default_value_t = 15)]
        size: usize,
    },
    /// Parameter spectrum at fixed energy: γ values at given C, or C at given γ.
    ParamSpectrum {
        #[arg(long, value_enum)]
        sweep: Sweep,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long = "C", allow_negative_numbers = true, required_if_eq("sweep", "gamma"))]
        strength: Option<f64>,
        #[arg(long, required_if_eq("sweep", "C"))]
        gamma: Option<f64>,
        #[arg(long = "N", default_value_t = 100)]
        size: usize,
    },
    /// Search (γ, C) reproducing a list of bound energies.
    RecoverParams {
        /// Energies ε, deepest first, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        energies: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        gamma_min: f64,
        #[arg(long, default_value_t = 0.99)]
        gamma_max: f64,
        #[arg(long, default_value_t = 99)]
        steps: usize,
        #[arg(long = "N", default_value_t = 80)]
        size: usize,
    },
}
