//! Recovering `(γ, C)` from a list of bound energies.
//!
//! For a trial `γ`, each energy `ε_n` implies a strength `C_n(ε_n)` read
//! from the strength spectrum of level `n`. The true parameters make all of
//! them equal, so the relative spread of the implied strengths is
//! minimized over `γ`, separately for each sign branch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parameter::{branch_strengths, Branch};
use crate::basis::mu_of_energy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoverySearch {
    pub gamma_min: f64,
    pub gamma_max: f64,
    /// Points of the coarse scan.
    pub steps: usize,
    pub size: usize,
}

impl Default for RecoverySearch {
    fn default() -> Self {
        Self {
            gamma_min: 0.01,
            gamma_max: 0.99,
            steps: 99,
            size: 80,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoveryCandidate {
    pub gamma: f64,
    /// Mean implied strength.
    pub strength: f64,
    pub branch: Branch,
    /// Standard deviation of the implied strengths over their mean.
    pub spread: f64,
}

fn implied(energies: &[f64], gamma: f64, branch: Branch, size: usize) -> Result<Option<(f64, f64)>> {
    let mut values = Vec::with_capacity(energies.len());
    for (n, &e) in energies.iter().enumerate() {
        match branch_strengths(mu_of_energy(e), gamma, size, branch)?.get(n) {
            Some(&c) => values.push(c),
            None => return Ok(None),
        }
    }
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m;
    Ok(Some((mean, var.sqrt() / mean.abs())))
}

/// Best candidate per branch, most consistent first. `energies` are the
/// lowest levels in order, deepest first.
pub fn recover_parameters(energies: &[f64], search: &RecoverySearch) -> Result<Vec<RecoveryCandidate>> {
    if energies.len() < 2 {
        return Err(Error::Config("need at least two energies to recover parameters".into()));
    }
    if let Some(&eps) = energies.iter().find(|e| !(e.is_finite() && **e < 0.0)) {
        return Err(Error::EnergyDomain {
            eps,
            constraint: "eps < 0 for bound levels",
        });
    }
    if energies.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("energies must be listed deepest first".into()));
    }
    if !(0.0 < search.gamma_min && search.gamma_min < search.gamma_max && search.gamma_max < 1.0) {
        return Err(Error::GammaDomain {
            gamma: search.gamma_min,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let steps = search.steps.max(2);
    let h = (search.gamma_max - search.gamma_min) / (steps - 1) as f64;
    let mut out = Vec::new();
    for branch in [Branch::Positive, Branch::Negative] {
        let scan: Vec<(f64, Option<(f64, f64)>)> = (0..steps)
            .into_par_iter()
            .map(|k| {
                let g = search.gamma_min + h * k as f64;
                implied(energies, g, branch, search.size).map(|v| (g, v))
            })
            .collect::<Result<_>>()?;
        let Some((g0, _)) = scan
            .iter()
            .filter_map(|(g, v)| v.map(|(_, s)| (*g, s)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            continue;
        };
        // golden-section refinement around the coarse minimum
        let spread = |g: f64| -> Result<f64> {
            Ok(implied(energies, g, branch, search.size)?.map_or(f64::INFINITY, |v| v.1))
        };
        let (mut a, mut b) = ((g0 - h).max(search.gamma_min), (g0 + h).min(search.gamma_max));
        let r = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        let (mut fc, mut fd) = (spread(c)?, spread(d)?);
        for _ in 0..80 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = spread(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = spread(d)?;
            }
        }
        let gamma = 0.5 * (a + b);
        if let Some((strength, spread)) = implied(energies, gamma, branch, search.size)? {
            out.push(RecoveryCandidate {
                gamma,
                strength,
                branch,
                spread,
            });
        }
    }
    out.sort_by(|a, b| a.spread.total_cmp(&b.spread));
    Ok(out)
}
