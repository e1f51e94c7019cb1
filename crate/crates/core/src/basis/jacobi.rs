use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_exponents(a: f64, b: f64) -> Result<()> {
    if a > -1.0 && b > -1.0 && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::JacobiExponent(a, b))
    }
}

/// `P_n^{(a,b)}(y)` by forward three-term recurrence.
pub fn jacobi_eval(n: usize, a: f64, b: f64, y: f64) -> Result<f64> {
    Ok(*jacobi_sequence(n, a, b, y)?.last().unwrap())
}

/// `[P_0, P_1, ..., P_n]` at `y`.
pub fn jacobi_sequence(n: usize, a: f64, b: f64, y: f64) -> Result<Vec<f64>> {
    check_exponents(a, b)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return Ok(out);
    }
    out.push(0.5 * ((a + b + 2.0) * y + (a - b)));
    let ab = a + b;
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let c1 = 2.0 * (k + 1.0) * (k + ab + 1.0) * s;
        let c2 = (s + 1.0) * (s * (s + 2.0) * y + a * a - b * b);
        let c3 = 2.0 * (k + a) * (k + b) * (s + 2.0);
        let len = out.len();
        let next = (c2 * out[len - 1] - c3 * out[len - 2]) / c1;
        out.push(next);
    }
    Ok(out)
}

/// Energy-dependent basis with `ν = 1`, `α = 1`, `β = μ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    mu: f64,
    size: usize,
}

impl BasisSpec {
    pub fn new(mu: f64, size: usize) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::Config(format!("basis exponent mu must be >= 0, got {mu}")));
        }
        if size == 0 {
            return Err(Error::SizeTooSmall { min: 1, got: 0 });
        }
        Ok(Self { mu, size })
    }

    /// Basis for the energy `eps <= 0`, `μ = 2 sqrt(-eps)`.
    pub fn for_energy(eps: f64, size: usize) -> Result<Self> {
        if eps > 0.0 || !eps.is_finite() {
            return Err(Error::EnergyDomain {
                eps,
                constraint: "eps <= 0",
            });
        }
        Self::new(mu_of_energy(eps), size)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        1.0
    }

    pub fn alpha(&self) -> f64 {
        1.0
    }

    pub fn beta(&self) -> f64 {
        0.5 * self.mu
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Normalization prefactor `sqrt((n+μ+1)(2n+μ+2)/(n+1))`.
    pub fn norm(&self, n: usize) -> f64 {
        let n = n as f64;
        ((n + self.mu + 1.0) * (2.0 * n + self.mu + 2.0) / (n + 1.0)).sqrt()
    }
}

/// `μ = 2 sqrt(-ε)`.
pub fn mu_of_energy(eps: f64) -> f64 {
    2.0 * (-eps).max(0.0).sqrt()
}

/// `ε = -μ²/4`.
pub fn energy_of_mu(mu: f64) -> f64 {
    -0.25 * mu * mu
}

/// `φ_n(r) = norm_n · e^{-λμr/2} (1 - e^{-λr}) P_n^{(μ,1)}(1 - 2e^{-λr})`.
pub fn basis_element(n: usize, spec: &BasisSpec, lambda: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let x = (-lambda * r).exp();
    let p = jacobi_eval(n, spec.mu, 1.0, 1.0 - 2.0 * x)?;
    Ok(spec.norm(n) * x.powf(0.5 * spec.mu) * (-(-lambda * r).exp_m1()) * p)
}
