//! Tridiagonal-representation solver for the screened Coulomb potential
//! with a barrier,
//!
//! ```text
//! V(r) = V0 (exp(-λr) - γ) / (exp(λr) - 1),   V0 = -λ² C.
//! ```
//!
//! Energies are reported in the dimensionless form `ε = 2E/λ²` (ħ = m = 1).
//! The crate provides parameter spectra and critical strengths, the energy
//! spectrum by inverting the strength spectrum, normalized S-wave bound
//! states, complex-rotation bound and resonance energies for any angular
//! momentum, and scattering phase shifts.

pub mod basis;
pub mod error;
pub mod resonances;
pub mod scattering;
pub mod spectra;
pub mod tridiag;
pub mod wavefunction;

pub use error::{Error, Result};

/// Library version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
