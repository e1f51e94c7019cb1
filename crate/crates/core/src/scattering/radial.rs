//! Regular solution of the reduced radial equation
//!
//! ```text
//! u'' + [ε + W(ρ) - ℓ(ℓ+1)/ρ²] u = 0,   W(ρ) = 2C (e^{-ρ} - γ) / (e^ρ - 1),
//! ```
//!
//! with `ρ = λr`. Near the origin `W ≈ 2Z̃/ρ`, `Z̃ = C(1-γ)`; the Coulomb-like
//! part is absorbed into a Frobenius series `u = ρ^{ℓ+1} Σ a_j ρ^j` that
//! seeds a Numerov march.

use serde::{Deserialize, Serialize};

use crate::basis::PotentialParams;
use crate::error::{Error, Result};

/// First grid point.
pub const DEFAULT_START: f64 = 1e-4;
pub const DEFAULT_STEP: f64 = 1e-3;

/// Grid points closer to the origin than this (scaled by `sqrt(ℓ(ℓ+1))`
/// when `ℓ > 0`) are filled from the series rather than by Numerov.
pub const SERIES_RADIUS: f64 = 0.05;

/// Coarsest admissible resolution: step times local wave number, over 2π.
pub const STEP_RESOLUTION: f64 = 0.05;

const MAX_SERIES_TERMS: usize = 80;

/// `max(40, 15/sqrt(ε))`.
pub fn default_rho_max(eps: f64) -> f64 {
    (15.0 / eps.sqrt()).max(40.0)
}

/// `W(ρ)`, the sign-flipped reduced potential `-2V/λ²`.
pub fn well(params: &PotentialParams, rho: f64) -> f64 {
    -2.0 * params.reduced_value(rho)
}

/// Coefficients `w_k` with `ρ W(ρ) = Σ w_k ρ^k`.
fn well_series(params: &PotentialParams, terms: usize) -> Vec<f64> {
    // g = ρ / (e^ρ - 1) by division of the series of (e^ρ - 1)/ρ
    let mut fact = vec![1.0_f64; terms + 2];
    for n in 1..terms + 2 {
        fact[n] = fact[n - 1] * n as f64;
    }
    let mut g = vec![0.0; terms];
    for n in 0..terms {
        g[n] = if n == 0 { 1.0 } else { 0.0 };
        for m in 1..=n {
            g[n] -= g[n - m] / fact[m + 1];
        }
    }
    let (c, gamma) = (params.strength(), params.gamma());
    let h: Vec<f64> = (0..terms)
        .map(|n| {
            let e = if n % 2 == 0 { 1.0 } else { -1.0 } / fact[n];
            if n == 0 {
                e - gamma
            } else {
                e
            }
        })
        .collect();
    (0..terms)
        .map(|n| 2.0 * c * (0..=n).map(|m| h[m] * g[n - m]).sum::<f64>())
        .collect()
}

/// Frobenius coefficients `a_j` of the regular solution, `a_0 = 1`.
fn series_coefficients(params: &PotentialParams, l: u32, eps: f64, terms: usize) -> Vec<f64> {
    let w = well_series(params, terms);
    let l = l as f64;
    let mut a = vec![0.0; terms];
    a[0] = 1.0;
    for j in 1..terms {
        let mut rhs: f64 = (0..j).map(|k| w[k] * a[j - 1 - k]).sum();
        if j >= 2 {
            rhs += eps * a[j - 2];
        }
        let jf = j as f64;
        a[j] = -rhs / ((jf + l + 1.0) * (jf + l) - l * (l + 1.0));
    }
    a
}

/// `(u, u')` of the regular solution normalized as `u ~ ρ^{ℓ+1}`.
pub fn regular_series(params: &PotentialParams, l: u32, eps: f64, rho: f64) -> Result<(f64, f64)> {
    let a = series_coefficients(params, l, eps, MAX_SERIES_TERMS);
    series_value(&a, l, rho)
}

fn series_value(a: &[f64], l: u32, rho: f64) -> Result<(f64, f64)> {
    let lf = l as f64;
    let (mut sum, mut dsum) = (0.0, 0.0);
    let mut power = 1.0;
    let mut converged = false;
    let mut last = f64::INFINITY;
    for (j, &aj) in a.iter().enumerate() {
        let term = aj * power;
        sum += term;
        dsum += (j as f64 + lf + 1.0) * term;
        // two consecutive negligible terms end the sum
        if term.abs() <= 1e-17 * sum.abs() && last <= 1e-17 * sum.abs() {
            converged = true;
            break;
        }
        last = term.abs();
        power *= rho;
    }
    if !converged {
        return Err(Error::Accuracy {
            what: "regular series seed",
            estimate: last / sum.abs().max(f64::MIN_POSITIVE),
            tolerance: 1e-17,
        });
    }
    let lead = rho.powi(l as i32 + 1);
    Ok((lead * sum, lead / rho * dsum))
}

/// Sampled regular solution on `ρ_i = start + i·step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub l: u32,
    pub energy: f64,
    pub start: f64,
    pub step: f64,
    pub u: Vec<f64>,
}

impl RadialSolution {
    pub fn rho(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.u.iter().enumerate().map(|(i, &u)| (self.rho(i), u))
    }

    /// Sign changes of `u` on the grid.
    pub fn node_count(&self) -> usize {
        count_sign_changes(self.u.iter().copied())
    }
}

fn kahan_add(sum: &mut f64, comp: &mut f64, value: f64) {
    let y = value - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

pub(crate) fn count_sign_changes(values: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Integrates from [`DEFAULT_START`] to `rho_max` with the given step.
///
/// Fails when the energy is not positive, when `rho_max` leaves the
/// potential tail unresolved, or when the step resolves the local
/// wavelength too coarsely.
pub fn radial_solution(
    params: &PotentialParams,
    l: u32,
    eps: f64,
    rho_max: f64,
    step: f64,
) -> Result<RadialSolution> {
    let solution = integrate(params, l, eps, DEFAULT_START, rho_max, step)?;
    let residual = well(params, rho_max).abs() / eps.sqrt();
    if residual > super::RANGE_TOLERANCE {
        return Err(Error::MatchingRange {
            rho: rho_max,
            residual,
        });
    }
    Ok(solution)
}

pub(crate) fn integrate(
    params: &PotentialParams,
    l: u32,
    eps: f64,
    start: f64,
    rho_max: f64,
    step: f64,
) -> Result<RadialSolution> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::EnergyDomain {
            eps,
            constraint: "eps > 0",
        });
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Config(format!("integration step must be positive, got {step}")));
    }
    if !(rho_max.is_finite() && rho_max > start + 2.0 * step) {
        return Err(Error::Config(format!(
            "integration range [{start}, {rho_max}] holds fewer than three steps of {step}"
        )));
    }
    let count = ((rho_max - start) / step).round() as usize + 1;
    let ll = (l * (l + 1)) as f64;
    let seeded = SERIES_RADIUS * ll.sqrt().max(1.0);
    let f = |rho: f64| eps + well(params, rho) - ll / (rho * rho);

    let coeffs = series_coefficients(params, l, eps, MAX_SERIES_TERMS);
    let mut u = Vec::with_capacity(count);
    let rho_at = |i: usize| start + i as f64 * step;
    while u.len() < count && (u.len() < 2 || rho_at(u.len()) <= seeded) {
        u.push(series_value(&coeffs, l, rho_at(u.len()))?.0);
    }

    // summed form of Numerov on w = (1 + h²f/12) u with compensated
    // accumulation; the textbook three-term form loses digits like 1/h²
    let h2 = step * step;
    let n0 = u.len();
    let f_first = f(rho_at(n0 - 2));
    let mut f_cur = f(rho_at(n0 - 1));
    let mut w = u[n0 - 1] * (1.0 + h2 * f_cur / 12.0);
    let mut d = w - u[n0 - 2] * (1.0 + h2 * f_first / 12.0);
    let (mut w_comp, mut d_comp) = (0.0, 0.0);
    let mut worst = 0.0_f64;
    for i in n0..count {
        let n = u.len();
        kahan_add(&mut d, &mut d_comp, -h2 * f_cur * u[n - 1]);
        kahan_add(&mut w, &mut w_comp, d);
        let f_next = f(rho_at(i));
        worst = worst.max(f_next.abs());
        u.push(w / (1.0 + h2 * f_next / 12.0));
        f_cur = f_next;
    }
    let resolution = step * worst.sqrt() / std::f64::consts::TAU;
    if resolution > STEP_RESOLUTION {
        return Err(Error::Accuracy {
            what: "Numerov step",
            estimate: resolution,
            tolerance: STEP_RESOLUTION,
        });
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("radial solution"));
    }
    Ok(RadialSolution {
        l,
        energy: eps,
        start,
        step,
        u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::bessel::riccati_bessel;

    #[test]
    fn well_series_matches_function() {
        let params = PotentialParams::reduced(70.0, 0.4).unwrap();
        let w = well_series(&params, 40);
        for &rho in &[0.01_f64, 0.3, 1.0, 2.0] {
            let series: f64 = w.iter().enumerate().map(|(k, c)| c * rho.powi(k as i32)).sum();
            let direct = rho * well(&params, rho);
            assert!((series - direct).abs() < 1e-11 * direct.abs(), "{rho}");
        }
        assert!((w[0] - 2.0 * 70.0 * 0.6).abs() < 1e-12);
    }

    #[test]
    fn seed_leading_terms() {
        // a_1 = -Z̃/(ℓ+1)
        let params = PotentialParams::reduced(70.0, 0.4).unwrap();
        for l in 0..3 {
            let a = series_coefficients(&params, l, 3.0, 5);
            assert!((a[1] + 42.0 / (l as f64 + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn regular_at_origin() {
        let params = PotentialParams::reduced(70.0, 0.4).unwrap();
        for l in 0..4 {
            let rho = DEFAULT_START;
            let (u, du) = regular_series(&params, l, 3.0, rho).unwrap();
            let ratio = u / rho.powi(l as i32 + 1);
            assert!((ratio - 1.0).abs() < 0.01, "{l}: {ratio}");
            assert!((du * rho / u - (l as f64 + 1.0)).abs() < 0.01);
        }
    }

    #[test]
    fn series_satisfies_equation() {
        // second difference of the series against the equation at ρ = 0.5
        let params = PotentialParams::reduced(-20.0, 0.3).unwrap();
        let (l, eps, rho, d) = (1, 2.0, 0.5, 1e-4);
        let u = |r| regular_series(&params, l, eps, r).unwrap().0;
        let second = (u(rho + d) - 2.0 * u(rho) + u(rho - d)) / (d * d);
        let f = eps + well(&params, rho) - 2.0 / (rho * rho);
        assert!((second + f * u(rho)).abs() < 1e-6 * u(rho).abs());
    }

    #[test]
    fn free_solution_is_riccati_bessel() {
        let params = PotentialParams::reduced(0.0, 0.4).unwrap();
        for l in 0..3 {
            let eps: f64 = 2.0;
            let k = eps.sqrt();
            let sol = radial_solution(&params, l, eps, 40.0, 1e-3).unwrap();
            // u = ρ^{ℓ+1}(1 + ...) and ĵ_ℓ(kρ) ~ (kρ)^{ℓ+1}/(2ℓ+1)!!
            let mut dfact = 1.0;
            for i in 0..l {
                dfact *= (2 * i + 3) as f64;
            }
            let scale = k.powi(l as i32 + 1) / dfact;
            let mut worst = 0.0_f64;
            for (rho, u) in sol.points().step_by(97) {
                let (j, _) = riccati_bessel(l, k * rho);
                worst = worst.max((scale * u - j).abs());
            }
            assert!(worst < 1e-8, "{l}: {worst}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let params = PotentialParams::reduced(70.0, 0.4).unwrap();
        assert!(matches!(
            radial_solution(&params, 1, -1.0, 40.0, 1e-3),
            Err(Error::EnergyDomain { .. })
        ));
        assert!(matches!(
            radial_solution(&params, 1, 3.0, 10.0, 1e-3),
            Err(Error::MatchingRange { .. })
        ));
        assert!(matches!(
            radial_solution(&params, 1, 200.0, 40.0, 0.1),
            Err(Error::Accuracy { .. })
        ));
    }
}
