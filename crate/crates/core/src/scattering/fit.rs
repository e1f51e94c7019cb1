use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use super::curve::PhaseShiftCurve;
use crate::error::{Error, Result};

/// Peak slope must exceed the typical background slope by this factor.
pub const SIGNATURE_RATIO: f64 = 10.0;

/// Breit-Wigner fit `δ(ε) = a + bε + atan2(Γ/2, ε_res - ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceFit {
    pub energy: f64,
    pub width: f64,
    /// Background offset `a`.
    pub offset: f64,
    /// Background slope `b`.
    pub slope: f64,
    /// Root-mean-square residual over the fitted window.
    pub rms: f64,
    pub window: (f64, f64),
}

impl ResonanceFit {
    pub fn model(&self, eps: f64) -> f64 {
        self.offset + self.slope * eps + (0.5 * self.width).atan2(self.energy - eps)
    }

    /// Resonant part alone.
    pub fn resonant_phase(&self, eps: f64) -> f64 {
        (0.5 * self.width).atan2(self.energy - eps)
    }
}

fn weighted_median(values: &mut [(f64, f64)]) -> f64 {
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = values.iter().map(|v| v.1).sum();
    let mut acc = 0.0;
    for &(v, w) in values.iter() {
        acc += w;
        if acc >= 0.5 * total {
            return v;
        }
    }
    values.last().map_or(0.0, |v| v.0)
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v < x).clamp(1, xs.len() - 1);
    let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    ys[i - 1] + t * (ys[i] - ys[i - 1])
}

/// Locates the steepest rise of the curve and fits a Breit-Wigner form
/// with linear background over a window of about twenty widths.
pub fn locate_resonance(curve: &PhaseShiftCurve) -> Result<ResonanceFit> {
    let samples = curve.samples();
    if samples.len() < 8 {
        return Err(Error::NoResonance(format!("only {} samples", samples.len())));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.energy).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.delta).collect();
    let mut slopes: Vec<(f64, f64)> = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| ((y[1] - y[0]) / (x[1] - x[0]), x[1] - x[0]))
        .collect();
    let (peak, &(peak_slope, _)) = slopes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .expect("at least one interval");
    let background = weighted_median(&mut slopes.iter().map(|&(s, w)| (s.abs(), w)).collect::<Vec<_>>());
    if !(peak_slope > SIGNATURE_RATIO * background) || !(peak_slope > 0.0) {
        return Err(Error::NoResonance(format!(
            "peak slope {peak_slope:.3e} against background {background:.3e}"
        )));
    }
    slopes.clear();

    let centre = 0.5 * (xs[peak] + xs[peak + 1]);
    let half0 = 1.0 / peak_slope;
    let (lo, hi) = (centre - 20.0 * half0, centre + 20.0 * half0);
    let mut first = xs.partition_point(|&x| x < lo);
    let mut last = xs.partition_point(|&x| x <= hi);
    while last - first < 8 && (first > 0 || last < xs.len()) {
        first = first.saturating_sub(1);
        last = (last + 1).min(xs.len());
    }
    let wx = &xs[first..last];
    let wy = &ys[first..last];
    let rise = interpolate(&xs, &ys, centre + 3.0 * half0) - interpolate(&xs, &ys, centre - 3.0 * half0);
    if rise < 1.0 {
        return Err(Error::NoResonance(format!("phase rises only {rise:.3} rad near the steepest point")));
    }

    // parameters: a, b, ε_res, ln(Γ/2)
    let model = |p: &Vector4<f64>, x: f64| p[0] + p[1] * x + p[3].exp().atan2(p[2] - x);
    let a0 = wy[0] - (half0).atan2(centre - wx[0]);
    let mut p = Vector4::new(a0, 0.0, centre, half0.ln());
    let cost = |p: &Vector4<f64>| -> f64 { wx.iter().zip(wy).map(|(&x, &y)| (y - model(p, x)).powi(2)).sum() };
    let mut current = cost(&p);
    let mut damping = 1e-3;
    for _ in 0..500 {
        let mut jtj = Matrix4::zeros();
        let mut jtr = Vector4::zeros();
        let g = p[3].exp();
        for (&x, &y) in wx.iter().zip(wy) {
            let d = p[2] - x;
            let q = d * d + g * g;
            let row = Vector4::new(1.0, x, -g / q, g * d / q);
            jtj += row * row.transpose();
            jtr += row * (y - model(&p, x));
        }
        let mut improved = false;
        while damping < 1e12 {
            let mut lhs = jtj;
            for i in 0..4 {
                lhs[(i, i)] *= 1.0 + damping;
                lhs[(i, i)] += 1e-300;
            }
            let Some(dp) = lhs.lu().solve(&jtr) else {
                damping *= 10.0;
                continue;
            };
            let trial = p + dp;
            let c = cost(&trial);
            if c.is_finite() && c < current {
                let converged = current - c <= 1e-15 * current.max(1e-300) || dp.norm() < 1e-14;
                p = trial;
                current = c;
                damping = (damping / 10.0).max(1e-12);
                improved = !converged;
                break;
            }
            damping *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let width = 2.0 * p[3].exp();
    let fit = ResonanceFit {
        energy: p[2],
        width,
        offset: p[0],
        slope: p[1],
        rms: (current / wx.len() as f64).sqrt(),
        window: (wx[0], wx[wx.len() - 1]),
    };
    if !(fit.width > 0.0 && fit.width.is_finite() && fit.energy >= xs[0] && fit.energy <= xs[xs.len() - 1]) {
        return Err(Error::NoResonance(format!(
            "fit left the sampled range (energy {}, width {})",
            fit.energy, fit.width
        )));
    }
    debug_assert!(fit.resonant_phase(fit.energy) - PI / 2.0 < 1e-12);
    Ok(fit)
}
