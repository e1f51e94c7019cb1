//! Parameter spectra, critical strengths, bound-state counting and the
//! energy spectrum obtained by inverting the strength spectrum.

mod energy;
mod parameter;
mod recovery;
mod thiele;

pub use energy::{
    energy_spectrum, EnergyLevel, EnergySpectrum, EnergySpectrumConfig, SpectrumTrace, TracePoint,
};
pub use parameter::{
    bound_state_count, c_spectrum, critical_strengths, gamma_spectrum, spectrum_via_polynomial_zeros,
    zero_energy_thresholds, Branch, CriticalStrengths, ParameterSpectrum, SpectrumKind, SpectrumLevel,
    CHI_CUTOFF,
};
pub use recovery::{recover_parameters, RecoveryCandidate, RecoverySearch};
pub use thiele::ThieleFraction;
