//! Scattering phase shifts `δ_ℓ(ε)` by direct integration of the radial
//! equation, phase-shift curves and resonance extraction.

mod bessel;
mod curve;
mod fit;
mod phase;
mod radial;

pub use bessel::{riccati_bessel, riccati_bessel_derivative};
pub use curve::{phase_shift_curve, phase_shift_curve_with, CurveSample, PhaseShiftCurve, DENSIFY_JUMP};
pub use fit::{locate_resonance, ResonanceFit, SIGNATURE_RATIO};
pub use phase::{phase_shift, phase_shift_with, PhaseShift, PhaseShiftConfig, STEP_TOLERANCE};
pub use radial::{
    default_rho_max, radial_solution, regular_series, well, RadialSolution, DEFAULT_START,
    DEFAULT_STEP, SERIES_RADIUS, STEP_RESOLUTION,
};

/// Largest tolerated `|W(ρ)|/k` at a matching radius; roughly the phase
/// the neglected potential tail could still contribute. Kept an order
/// below [`STEP_TOLERANCE`].
pub const RANGE_TOLERANCE: f64 = 1e-9;
