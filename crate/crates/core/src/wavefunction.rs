//! Normalized S-wave bound states synthesized from the recursion
//! polynomials, `ψ = ω Σ_m P_m φ_m` with `ω = 1/sqrt(𝒦)` and the kernel
//! `𝒦 = Σ Θ_nm P_n P_m`.

use serde::{Deserialize, Serialize};

use crate::basis::{gauss_laguerre, jacobi_sequence, mu_of_energy, overlap_matrix, BasisSpec, PotentialParams};
use crate::error::{Error, Result};
use crate::spectra::{energy_spectrum, Branch, EnergySpectrumConfig};
use crate::tridiag::p_polynomials;

/// Truncation the expansion is stable at for typical parameters.
pub const DEFAULT_TERMS: usize = 15;

/// Relative distance of `C` from the strength spectrum above which a point
/// is flagged off-shell.
pub const SHELL_TOLERANCE: f64 = 1e-6;

const SHELL_CHECK_SIZE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub value: f64,
    /// Contribution of the last row and column, `𝒦_N - 𝒦_{N-1}`.
    pub tail: f64,
    /// Relative distance of `C` from the nearest strength level at this
    /// energy.
    pub shell_distance: f64,
    pub off_shell: bool,
}

impl Kernel {
    /// `ω = 1/sqrt(𝒦)`.
    pub fn omega(&self) -> f64 {
        1.0 / self.value.sqrt()
    }
}

fn shell_distance(mu: f64, gamma: f64, c: f64) -> Result<f64> {
    let Some(branch) = Branch::of(c) else {
        return Err(Error::DegenerateStrength);
    };
    let levels = crate::spectra::c_spectrum(crate::basis::energy_of_mu(mu), gamma, SHELL_CHECK_SIZE)?
        .branch(branch);
    Ok(levels
        .iter()
        .map(|s| ((s - c) / c).abs())
        .fold(f64::INFINITY, f64::min))
}

fn quadratic_form(theta: &nalgebra::DMatrix<f64>, p: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += theta[(i, j)] * p[i] * p[j];
        }
    }
    s
}

/// Kernel of the first `size` terms at basis exponent `mu`.
pub fn kernel(mu: f64, gamma: f64, c: f64, size: usize) -> Result<Kernel> {
    if !(mu > 0.0) {
        return Err(Error::NotNormalizable(mu));
    }
    let theta = overlap_matrix(&BasisSpec::new(mu, size)?)?;
    let p = p_polynomials(mu, gamma, c, size - 1)?;
    let value = quadratic_form(&theta, &p, size);
    let previous = if size > 1 { quadratic_form(&theta, &p, size - 1) } else { 0.0 };
    let shell_distance = shell_distance(mu, gamma, c)?;
    Ok(Kernel {
        value,
        tail: value - previous,
        shell_distance,
        off_shell: shell_distance > SHELL_TOLERANCE,
    })
}

/// A normalized bound state `ψ(r) = ω Σ_{m<N} P_m φ_m(r)`, with the overall
/// sign fixed so that `ψ'(0+) > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStateSolution {
    pub params: PotentialParams,
    pub energy: f64,
    pub mu: f64,
    /// `Q_0 .. Q_{N-1}`.
    pub q: Vec<f64>,
    /// `P_0 .. P_{N-1}`.
    pub p: Vec<f64>,
    pub kernel: Kernel,
    /// `±1`, applied on top of `ω` to fix the sign convention.
    pub sign: f64,
}

impl BoundStateSolution {
    /// State at energy `eps` from `size` expansion terms. A flagged
    /// off-shell kernel is kept; callers decide whether to accept it.
    pub fn new(params: PotentialParams, eps: f64, size: usize) -> Result<Self> {
        if !(eps < 0.0 && eps.is_finite()) {
            return Err(Error::EnergyDomain {
                eps,
                constraint: "eps < 0 for a bound state",
            });
        }
        if size == 0 {
            return Err(Error::SizeTooSmall { min: 1, got: 0 });
        }
        let mu = mu_of_energy(eps);
        let (gamma, c) = (params.gamma(), params.strength());
        let kernel = kernel(mu, gamma, c, size)?;
        let q = crate::tridiag::q_polynomials(mu, gamma, c, size - 1)?;
        let p = p_polynomials(mu, gamma, c, size - 1)?;
        let spec = BasisSpec::new(mu, size)?;
        // y = 1 - 2e^{-ρ} starts at -1, so near the origin
        // φ_m ≈ norm_m P_m^{(μ,1)}(-1) ρ
        let at_origin = jacobi_sequence(size - 1, mu, 1.0, -1.0)?;
        let slope: f64 = (0..size).map(|m| p[m] * spec.norm(m) * at_origin[m]).sum();
        Ok(Self {
            params,
            energy: eps,
            mu,
            q,
            p,
            kernel,
            sign: if slope < 0.0 { -1.0 } else { 1.0 },
        })
    }

    pub fn size(&self) -> usize {
        self.p.len()
    }

    pub fn omega(&self) -> f64 {
        self.kernel.omega()
    }

    /// `ψ` as a function of `ρ = λr`.
    pub fn eval_reduced(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        (-0.5 * self.mu * rho).exp() * self.without_decay(rho)
    }

    /// `ψ(ρ) e^{μρ/2}`, finite for any `ρ`.
    fn without_decay(&self, rho: f64) -> f64 {
        let x = (-rho).exp();
        let mu = self.mu;
        let spec = BasisSpec::new(mu, self.size()).expect("validated at construction");
        let jac = jacobi_sequence(self.size() - 1, mu, 1.0, 1.0 - 2.0 * x).expect("mu >= 0");
        let sum: f64 = (0..self.size()).map(|m| self.p[m] * spec.norm(m) * jac[m]).sum();
        self.sign * self.omega() * (-(-rho).exp_m1()) * sum
    }

    /// `ψ(r)`.
    pub fn eval(&self, r: f64) -> f64 {
        self.eval_reduced(self.params.lambda() * r)
    }

    pub fn sample(&self, r: &[f64]) -> Vec<f64> {
        r.iter().map(|&r| self.eval(r)).collect()
    }

    /// `ρ` beyond which `ψ` is negligible.
    fn reach(&self) -> f64 {
        (80.0 / self.mu).max(20.0)
    }

    /// `λ ∫ ψ² dr` by Gauss-Laguerre quadrature in `t = μρ`, independent of
    /// the overlap matrix used to build `ω`.
    pub fn radial_norm(&self, nodes: usize) -> Result<f64> {
        let rule = gauss_laguerre(nodes, 0.0)?;
        let mu = self.mu;
        Ok(rule.integrate(|t| {
            let v = self.without_decay(t / mu);
            v * v / mu
        }))
    }

    /// `λ ∫ ψ_a ψ_b dr` for two states of the same potential.
    pub fn overlap(&self, other: &Self, nodes: usize) -> Result<f64> {
        let rule = gauss_laguerre(nodes, 0.0)?;
        let s = 0.5 * (self.mu + other.mu);
        Ok(rule.integrate(|t| {
            let rho = t / s;
            self.without_decay(rho) * other.without_decay(rho) / s
        }))
    }

    /// Sign changes of `ψ` on `(0, reach]`, ignoring points where
    /// `|ψ| < 1e-6 max|ψ|`.
    pub fn node_count(&self) -> usize {
        let reach = self.reach();
        let points = 8000;
        let values: Vec<f64> = (1..=points)
            .map(|k| self.eval_reduced(reach * k as f64 / points as f64))
            .collect();
        let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let mut last = 0.0_f64;
        let mut nodes = 0;
        for v in values {
            if v.abs() < 1e-6 * peak {
                continue;
            }
            if last != 0.0 && v.signum() != last {
                nodes += 1;
            }
            last = v.signum();
        }
        nodes
    }
}

/// The `level`-th S-wave bound state (0 = ground state).
pub fn bound_state(params: PotentialParams, level: usize, size: usize) -> Result<BoundStateSolution> {
    let spectrum = energy_spectrum(params.gamma(), params.strength(), &EnergySpectrumConfig::default())?;
    let count = spectrum.levels.len();
    let energy = spectrum
        .levels
        .get(level)
        .ok_or(Error::LevelNotBound { level, count })?
        .energy;
    BoundStateSolution::new(params, energy, size)
}

/// Samples of the normalized eigenfunction at energy `eps`.
pub fn eigenfunction(params: PotentialParams, eps: f64, r: &[f64], size: usize) -> Result<Vec<f64>> {
    Ok(BoundStateSolution::new(params, eps, size)?.sample(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPoint {
    pub size: usize,
    /// Partial kernel `𝒦_N`.
    pub kernel: f64,
    /// `|ω_ref² 𝒦_N - 1|`.
    pub deviation: f64,
}

/// Partial-sum norms `ω_ref² 𝒦_N` for `N` in `sizes`, with `ω_ref` taken
/// at `reference` terms. On the spectrum the deviation settles; off it the
/// polynomials grow and the deviation with them.
pub fn truncation_diagnostic(
    params: PotentialParams,
    eps: f64,
    sizes: &[usize],
    reference: usize,
) -> Result<Vec<TruncationPoint>> {
    let mu = mu_of_energy(eps);
    if !(mu > 0.0) {
        return Err(Error::NotNormalizable(mu));
    }
    if reference == 0 || sizes.contains(&0) {
        return Err(Error::SizeTooSmall { min: 1, got: 0 });
    }
    let largest = sizes.iter().copied().max().unwrap_or(0).max(reference);
    let theta = overlap_matrix(&BasisSpec::new(mu, largest)?)?;
    let p = p_polynomials(mu, params.gamma(), params.strength(), largest - 1)?;
    let reference_kernel = quadratic_form(&theta, &p, reference);
    Ok(sizes
        .iter()
        .map(|&n| {
            let k = quadratic_form(&theta, &p, n);
            TruncationPoint {
                size: n,
                kernel: k,
                deviation: (k / reference_kernel - 1.0).abs(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PotentialParams {
        PotentialParams::reduced(-70.0, 0.7).unwrap()
    }

    #[test]
    fn single_term_kernel_is_theta00() {
        let k = kernel(1.3, 0.7, -70.0, 1).unwrap();
        let theta = overlap_matrix(&BasisSpec::new(1.3, 1).unwrap()).unwrap();
        assert_eq!(k.value, theta[(0, 0)]);
        assert_eq!(k.tail, k.value);
        assert!(k.off_shell);
    }

    #[test]
    fn zero_energy_rejected() {
        assert_eq!(kernel(0.0, 0.5, 1.0, 5), Err(Error::NotNormalizable(0.0)));
        assert!(BoundStateSolution::new(params(), 0.0, 5).is_err());
    }

    #[test]
    fn ground_state_shape() {
        let s = bound_state(params(), 0, DEFAULT_TERMS).unwrap();
        assert!(!s.kernel.off_shell, "{:?}", s.kernel);
        assert!(s.kernel.value > 0.0);
        assert_eq!(s.eval(0.0), 0.0);
        assert!(s.eval(1e-4) > 0.0);
        assert!(s.eval(200.0).abs() < 1e-12);
        assert_eq!(s.omega(), 1.0 / s.kernel.value.sqrt());
        assert_eq!(s.node_count(), 0);
    }

    #[test]
    fn level_not_bound() {
        assert!(matches!(
            bound_state(params(), 9, DEFAULT_TERMS),
            Err(Error::LevelNotBound { level: 9, .. })
        ));
    }

    #[test]
    fn single_term_deviation() {
        let s = bound_state(params(), 0, DEFAULT_TERMS).unwrap();
        let d = truncation_diagnostic(params(), s.energy, &[1], DEFAULT_TERMS).unwrap();
        let theta = overlap_matrix(&BasisSpec::new(s.mu, 1).unwrap()).unwrap();
        let expected = (theta[(0, 0)] * s.omega() * s.omega() - 1.0).abs();
        assert!((d[0].deviation - expected).abs() < 1e-12);
    }
}
