use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phase::{phase_shift_with, PhaseShiftConfig};
use crate::basis::PotentialParams;
use crate::error::{Error, Result};

/// Adjacent samples differing by more than this (radians) get a midpoint.
pub const DENSIFY_JUMP: f64 = 0.05;

/// Upper bound on the number of samples after densification.
pub const MAX_SAMPLES: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub energy: f64,
    /// Unwrapped phase.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftCurve {
    pub l: u32,
    pub params: PotentialParams,
    samples: Vec<CurveSample>,
}

impl PhaseShiftCurve {
    /// Wraps existing samples, which must be finite with strictly
    /// increasing energies.
    pub fn from_samples(l: u32, params: PotentialParams, samples: Vec<CurveSample>) -> Result<Self> {
        if samples.iter().any(|s| !(s.energy.is_finite() && s.delta.is_finite())) {
            return Err(Error::NonFinite("phase-shift sample"));
        }
        if samples.windows(2).any(|w| !(w[1].energy > w[0].energy)) {
            return Err(Error::Config("phase-shift samples must increase in energy".into()));
        }
        Ok(Self { l, params, samples })
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest `|δ_{i+1} - δ_i|`.
    pub fn max_jump(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1].delta - w[0].delta).abs())
            .fold(0.0, f64::max)
    }
}

/// Default phase-shift settings, `n_samples` evenly spaced energies.
pub fn phase_shift_curve(
    params: &PotentialParams,
    l: u32,
    eps_range: (f64, f64),
    n_samples: usize,
) -> Result<PhaseShiftCurve> {
    phase_shift_curve_with(params, l, eps_range, n_samples, &PhaseShiftConfig::default())
}

pub fn phase_shift_curve_with(
    params: &PotentialParams,
    l: u32,
    eps_range: (f64, f64),
    n_samples: usize,
    config: &PhaseShiftConfig,
) -> Result<PhaseShiftCurve> {
    let (lo, hi) = eps_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Config(format!(
            "energy range must satisfy 0 < min < max, got ({lo}, {hi})"
        )));
    }
    if n_samples < 2 {
        return Err(Error::SizeTooSmall {
            min: 2,
            got: n_samples,
        });
    }
    let eval = |energies: &[f64]| -> Result<Vec<CurveSample>> {
        energies
            .par_iter()
            .map(|&e| {
                phase_shift_with(params, l, e, config).map(|p| CurveSample {
                    energy: e,
                    delta: p.total,
                })
            })
            .collect()
    };
    let grid: Vec<f64> = (0..n_samples)
        .map(|i| lo + (hi - lo) * i as f64 / (n_samples - 1) as f64)
        .collect();
    let mut samples = eval(&grid)?;
    let min_width = (hi - lo) * 1e-9;
    while samples.len() < MAX_SAMPLES {
        let mids: Vec<f64> = samples
            .windows(2)
            .filter(|w| (w[1].delta - w[0].delta).abs() > DENSIFY_JUMP && w[1].energy - w[0].energy > min_width)
            .map(|w| 0.5 * (w[0].energy + w[1].energy))
            .take(MAX_SAMPLES - samples.len())
            .collect();
        if mids.is_empty() {
            break;
        }
        samples.extend(eval(&mids)?);
        samples.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    }
    unwrap(&mut samples);
    PhaseShiftCurve::from_samples(l, *params, samples)
}

/// Shifts by multiples of `π` so no adjacent jump exceeds `π/2`. The
/// total phases are already continuous; this only guards the rare sample
/// whose node count slipped.
fn unwrap(samples: &mut [CurveSample]) {
    for i in 1..samples.len() {
        let jump = samples[i].delta - samples[i - 1].delta;
        samples[i].delta -= PI * (jump / PI).round();
    }
}
