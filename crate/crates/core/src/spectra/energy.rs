//! Energy spectrum by inverting the strength spectrum: each level's trace
//! `C_n(ε)` is sampled on an energy grid, fitted by a continued fraction
//! of `μ` as a function of `C`, evaluated at the requested strength and
//! then refined by a secant solve of `C_n(μ) = C`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parameter::{bound_state_count, branch_strengths, Branch};
use super::thiele::ThieleFraction;
use crate::basis::{energy_of_mu, mu_of_energy};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergySpectrumConfig {
    /// Continued-fraction order `M` (number of samples it passes through).
    pub order: usize,
    /// Grid points, including `ε = 0`.
    pub grid_points: usize,
    /// Shallowest non-zero grid energy, as `|ε|`.
    pub shallowest: f64,
    /// Deepest grid energy; chosen and deepened automatically when `None`.
    pub deepest: Option<f64>,
    /// Size of the `T_γ` matrices.
    pub size: usize,
    /// Secant refinement of the fitted values.
    pub refine: bool,
}

impl Default for EnergySpectrumConfig {
    fn default() -> Self {
        Self {
            order: 50,
            grid_points: 60,
            shallowest: 1e-3,
            deepest: None,
            size: 100,
            refine: true,
        }
    }
}

impl EnergySpectrumConfig {
    pub fn with_order(order: usize) -> Self {
        Self {
            order,
            grid_points: order.max(60),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub energy: f64,
    pub mu: f64,
    pub strength: f64,
}

/// Samples of one level's strength as the energy is lowered from zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTrace {
    pub level: usize,
    pub samples: Vec<TracePoint>,
}

impl SpectrumTrace {
    /// Fails unless `|C|` strictly increases along the samples, which are
    /// ordered from the shallowest energy down.
    pub fn check_monotone(&self) -> Result<()> {
        if self.samples.windows(2).all(|w| w[1].energy < w[0].energy) {
            if self
                .samples
                .windows(2)
                .all(|w| w[1].strength.abs() > w[0].strength.abs())
            {
                return Ok(());
            }
            return Err(Error::Trace {
                level: self.level,
                reason: "strength is not monotone along the trace".into(),
            });
        }
        Err(Error::Trace {
            level: self.level,
            reason: "energies are not strictly decreasing".into(),
        })
    }

    /// Order-`order` continued fraction of `μ(C)` through the samples
    /// nearest `target`, nearest first.
    pub fn fit(&self, order: usize, target: f64) -> Result<ThieleFraction> {
        if order > self.samples.len() {
            return Err(Error::FitOrder {
                order,
                samples: self.samples.len(),
            });
        }
        let mut chosen: Vec<&TracePoint> = self.samples.iter().collect();
        chosen.sort_by(|a, b| (a.strength - target).abs().total_cmp(&(b.strength - target).abs()));
        chosen.truncate(order);
        let xs: Vec<f64> = chosen.iter().map(|p| p.strength).collect();
        let ys: Vec<f64> = chosen.iter().map(|p| p.mu).collect();
        ThieleFraction::fit(&xs, &ys)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub index: usize,
    /// Value read off the continued fraction.
    pub fitted: f64,
    /// Value after refinement (equal to `fitted` when refinement is off).
    pub energy: f64,
    pub mu: f64,
    /// `|C_n(energy) - C| / |C|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergySpectrum {
    pub gamma: f64,
    pub strength: f64,
    pub config: EnergySpectrumConfig,
    /// Deepest first.
    pub levels: Vec<EnergyLevel>,
    pub traces: Vec<SpectrumTrace>,
}

fn level_strength(mu: f64, gamma: f64, size: usize, branch: Branch, level: usize) -> Result<Option<f64>> {
    Ok(branch_strengths(mu, gamma, size, branch)?.get(level).copied())
}

/// Log-spaced energies from `-shallowest` to `deepest`, preceded by 0.
fn energy_grid(points: usize, shallowest: f64, deepest: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    let n = points.saturating_sub(1).max(2);
    let (a, b) = (shallowest.ln(), deepest.abs().ln());
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        grid.push(-(a + t * (b - a)).exp());
    }
    grid
}

/// Bound S-wave energies for shape `gamma` and strength `c`.
pub fn energy_spectrum(gamma: f64, c: f64, config: &EnergySpectrumConfig) -> Result<EnergySpectrum> {
    if config.order < 4 {
        return Err(Error::Config(format!(
            "continued-fraction order must be at least 4, got {}",
            config.order
        )));
    }
    if !(config.shallowest > 0.0 && config.shallowest.is_finite()) {
        return Err(Error::Config("shallowest grid energy must be positive".into()));
    }
    let branch = Branch::of(c).ok_or(Error::DegenerateStrength)?;
    let count = bound_state_count(gamma, c, config.size)?;
    let mut spectrum = EnergySpectrum {
        gamma,
        strength: c,
        config: *config,
        levels: Vec::new(),
        traces: Vec::new(),
    };
    if count == 0 {
        return Ok(spectrum);
    }

    let deepest = match config.deepest {
        Some(d) => -d.abs(),
        None => {
            let z = c * (1.0 - gamma);
            deepest_energy(-(1.0 + c.abs().max(z * z)), gamma, c, config.size, branch, config.shallowest)?
        }
    };
    if deepest.abs() <= config.shallowest {
        return Err(Error::Config("deepest grid energy must lie below the shallowest".into()));
    }

    let grid = energy_grid(config.grid_points, config.shallowest, deepest);
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&e| branch_strengths(mu_of_energy(e), gamma, config.size, branch))
        .collect::<Result<_>>()?;

    for level in 0..count {
        let samples: Vec<TracePoint> = grid
            .iter()
            .zip(&rows)
            .filter_map(|(&energy, row)| {
                row.get(level).map(|&strength| TracePoint {
                    energy,
                    mu: mu_of_energy(energy),
                    strength,
                })
            })
            .collect();
        let trace = SpectrumTrace { level, samples };
        trace.check_monotone()?;
        let fraction = trace.fit(config.order, c)?;
        let mu_fit = fraction.eval(c);
        if !mu_fit.is_finite() {
            return Err(Error::Trace {
                level,
                reason: "continued fraction has a pole at the requested strength".into(),
            });
        }
        let mu = if config.refine {
            refine(mu_fit.max(0.0), gamma, c, config.size, branch, level)?
        } else {
            mu_fit
        };
        let reached = level_strength(mu, gamma, config.size, branch, level)?.unwrap_or(f64::INFINITY);
        spectrum.levels.push(EnergyLevel {
            index: level,
            fitted: energy_of_mu(mu_fit),
            energy: energy_of_mu(mu),
            mu,
            residual: ((reached - c) / c).abs(),
        });
        spectrum.traces.push(trace);
    }
    Ok(spectrum)
}

/// An energy at which the ground-state trace needs at least `1.2|c|`.
///
/// Starts from `guess` and doubles the depth while the trace is too weak.
/// A missing trace means the level has run off the computable range, so
/// the search then narrows geometrically toward shallower energies.
fn deepest_energy(guess: f64, gamma: f64, c: f64, size: usize, branch: Branch, shallowest: f64) -> Result<f64> {
    let target = 1.2 * c.abs();
    let (mut weak, mut lost): (Option<f64>, Option<f64>) = (None, None);
    let mut d = guess;
    for _ in 0..200 {
        match level_strength(mu_of_energy(d), gamma, size, branch, 0)? {
            Some(s) if s.abs() >= target => return Ok(d),
            Some(_) => weak = Some(d),
            None => lost = Some(d),
        }
        d = match (weak, lost) {
            (Some(a), Some(b)) => -(a * b).sqrt(),
            (Some(a), None) => 2.0 * a,
            (None, Some(b)) => -((b.abs() * shallowest).sqrt()),
            (None, None) => unreachable!("one of the bounds was just set"),
        };
        if weak.zip(lost).is_some_and(|(a, b)| (b / a - 1.0).abs() < 1e-12) {
            break;
        }
    }
    Err(Error::Trace {
        level: 0,
        reason: "could not find an energy deep enough to reach the strength".into(),
    })
}

/// Secant iteration on `|C_n(μ)| - |c|` from the fitted value.
fn refine(mu0: f64, gamma: f64, c: f64, size: usize, branch: Branch, level: usize) -> Result<f64> {
    let g = |mu: f64| -> Result<f64> {
        let s = level_strength(mu.max(0.0), gamma, size, branch, level)?.ok_or(Error::Trace {
            level,
            reason: "level disappeared during refinement".into(),
        })?;
        Ok(s.abs() - c.abs())
    };
    let mut x0 = mu0;
    let mut x1 = mu0 * (1.0 + 1e-7) + 1e-9;
    let mut g0 = g(x0)?;
    let mut g1 = g(x1)?;
    for _ in 0..40 {
        if g1 == 0.0 || g1 == g0 {
            break;
        }
        let x2 = (x1 - g1 * (x1 - x0) / (g1 - g0)).max(0.0);
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g(x1)?;
        if (x1 - x0).abs() <= 1e-15 * x1.abs().max(1.0) {
            break;
        }
    }
    // keep whichever end is closer to the target
    Ok(if g1.abs() <= g0.abs() { x1 } else { x0 })
}
