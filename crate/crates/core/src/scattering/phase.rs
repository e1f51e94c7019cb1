use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bessel::{riccati_bessel, riccati_bessel_derivative};
use super::radial::{count_sign_changes, default_rho_max, integrate, well, DEFAULT_START, DEFAULT_STEP};
use super::RANGE_TOLERANCE;
use crate::basis::PotentialParams;
use crate::error::{Error, Result};

/// Agreement required between the phase at step `h` and `h/2`.
pub const STEP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftConfig {
    /// Initial Numerov step.
    pub step: f64,
    /// Outer matching radius; `max(40, 15/sqrt(ε))` when unset.
    pub rho_max: Option<f64>,
    pub tolerance: f64,
    /// Step halvings allowed before giving up.
    pub max_halvings: u32,
}

impl Default for PhaseShiftConfig {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            rho_max: None,
            tolerance: STEP_TOLERANCE,
            max_halvings: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseShift {
    pub l: u32,
    pub energy: f64,
    /// Principal value in `(-π/2, π/2]`.
    pub delta: f64,
    /// Multiple of `π` separating `delta` from the total phase.
    pub branch: i64,
    /// `delta + branch·π`, continuous in the energy and zero at high energy.
    pub total: f64,
    /// `|δ(h) - δ(h/2)|` at the accepted step.
    pub step_error: f64,
    /// Disagreement with a second matching pair a quarter wavelength in.
    pub radius_drift: f64,
    pub step: f64,
    pub rho_match: f64,
}

/// Reduces an angle to `(-π/2, π/2]`.
pub(crate) fn principal(angle: f64) -> f64 {
    let r = angle.rem_euclid(PI);
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// `δ` at the default configuration.
pub fn phase_shift(params: &PotentialParams, l: u32, eps: f64) -> Result<PhaseShift> {
    phase_shift_with(params, l, eps, &PhaseShiftConfig::default())
}

/// Halves the step until two successive phases agree to the tolerance.
pub fn phase_shift_with(
    params: &PotentialParams,
    l: u32,
    eps: f64,
    config: &PhaseShiftConfig,
) -> Result<PhaseShift> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::EnergyDomain {
            eps,
            constraint: "eps > 0",
        });
    }
    let rho_max = config.rho_max.unwrap_or_else(|| default_rho_max(eps));
    let mut step = config.step;
    let mut previous = match_at(params, l, eps, rho_max, step)?;
    let mut diff = f64::INFINITY;
    for _ in 0..=config.max_halvings {
        step /= 2.0;
        let current = match_at(params, l, eps, rho_max, step)?;
        diff = principal(current.delta - previous.delta).abs();
        if diff <= config.tolerance {
            return Ok(PhaseShift {
                step_error: diff,
                ..current
            });
        }
        previous = current;
    }
    Err(Error::Accuracy {
        what: "phase shift under step halving",
        estimate: diff,
        tolerance: config.tolerance,
    })
}

fn match_at(params: &PotentialParams, l: u32, eps: f64, rho_max: f64, step: f64) -> Result<PhaseShift> {
    let sol = integrate(params, l, eps, DEFAULT_START, rho_max, step)?;
    let k = eps.sqrt();
    let quarter = ((PI / (2.0 * k)) / step).round().max(1.0) as usize;
    let b = sol.len() - 1;
    if b < 2 * quarter + 1 {
        return Err(Error::Config(format!(
            "matching radius {rho_max} is shorter than a wavelength at eps = {eps}"
        )));
    }
    let a = b - quarter;
    let inner = sol.rho(a - quarter / 2);
    let residual = well(params, inner).abs() / k;
    if residual > RANGE_TOLERANCE {
        return Err(Error::MatchingRange {
            rho: inner,
            residual,
        });
    }
    let pair = |i: usize, j: usize| {
        let (ja, ya) = riccati_bessel(l, k * sol.rho(i));
        let (jb, yb) = riccati_bessel(l, k * sol.rho(j));
        let (ua, ub) = (sol.u[i], sol.u[j]);
        principal((ub * ja - ua * jb).atan2(ub * ya - ua * yb))
    };
    let delta = pair(a, b);
    let radius_drift = principal(delta - pair(a - quarter / 2, b - quarter / 2)).abs();

    // amplitude from whichever point is better conditioned, then u'(ρ_b)
    let (sd, cd) = delta.sin_cos();
    let free = |i: usize| {
        let (j, y) = riccati_bessel(l, k * sol.rho(i));
        cd * j - sd * y
    };
    let amplitude = if free(b).abs() >= free(a).abs() {
        sol.u[b] / free(b)
    } else {
        sol.u[a] / free(a)
    };
    let rho_b = sol.rho(b);
    let (djb, dyb) = riccati_bessel_derivative(l, k * rho_b);
    let du_over_k = amplitude * (cd * djb - sd * dyb);

    // Prüfer angles of u and of the free solution at ρ_b
    let nodes_u = count_sign_changes(sol.u[..=b].iter().copied());
    // zeros of ĵ are at least π/k apart, so a sparse sample suffices
    let stride = ((0.25 / (k * step)).floor() as usize).max(1);
    let nodes_free = count_sign_changes(
        (0..=b)
            .step_by(stride)
            .chain(std::iter::once(b))
            .map(|i| riccati_bessel(l, k * sol.rho(i)).0),
    );
    let (jb, _) = riccati_bessel(l, k * rho_b);
    let phase_u = PI * nodes_u as f64 + sol.u[b].atan2(du_over_k).rem_euclid(PI);
    let phase_free = PI * nodes_free as f64 + jb.atan2(djb).rem_euclid(PI);
    let branch = ((phase_u - phase_free - delta) / PI).round() as i64;

    Ok(PhaseShift {
        l,
        energy: eps,
        delta,
        branch,
        total: delta + branch as f64 * PI,
        step_error: f64::NAN,
        radius_drift,
        step,
        rho_match: rho_b,
    })
}
