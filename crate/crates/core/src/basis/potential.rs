//! The three-parameter screened Coulomb potential with a barrier,
//!
//! ```text
//! V(r) = V0 (exp(-λr) - γ) / (exp(λr) - 1),   V0 = -λ² C,
//! ```
//!
//! in units ħ = m = 1. Near the origin `r V(r) -> Z_eff = V0 (1 - γ) / λ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical model: range parameter `lambda`, dimensionless strength `c`
/// and shape `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    lambda: f64,
    c: f64,
    gamma: f64,
}

/// Closed-form landmarks of the potential curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Landmarks {
    /// Zero crossing.
    pub r0: f64,
    /// Location of the local extremum.
    pub r1: f64,
    /// `V(r1)`.
    pub v_extremum: f64,
    /// Coefficient of the `1/r` singularity.
    pub z_eff: f64,
}

impl PotentialParams {
    /// Validates `lambda > 0` and the solvability class: `0 < gamma < 1`,
    /// or otherwise `gamma * V0 > 0`.
    pub fn new(lambda: f64, c: f64, gamma: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidLambda(lambda));
        }
        if !c.is_finite() {
            return Err(Error::NonFinite("potential strength"));
        }
        if !gamma.is_finite() {
            return Err(Error::NonFinite("gamma"));
        }
        let params = Self { lambda, c, gamma };
        if !(gamma > 0.0 && gamma < 1.0) {
            let product = gamma * params.v0();
            if !(product > 0.0) {
                return Err(Error::OutsideSolvabilityClass { gamma, product });
            }
        }
        Ok(params)
    }

    /// Dimensionless parameters with `lambda = 1`.
    pub fn reduced(c: f64, gamma: f64) -> Result<Self> {
        Self::new(1.0, c, gamma)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn strength(&self) -> f64 {
        self.c
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `V0 = -λ² C`.
    pub fn v0(&self) -> f64 {
        -self.lambda * self.lambda * self.c
    }

    /// `D = C (2γ - 1)`.
    pub fn d(&self) -> f64 {
        self.c * (2.0 * self.gamma - 1.0)
    }

    /// `Z_eff = V0 (1 - γ) / λ`.
    pub fn z_eff(&self) -> f64 {
        self.v0() * (1.0 - self.gamma) / self.lambda
    }

    /// True inside the main class `0 < γ < 1`.
    pub fn in_main_class(&self) -> bool {
        self.gamma > 0.0 && self.gamma < 1.0
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::NonPositiveRadius(r));
        }
        Ok(self.lambda * self.lambda * self.reduced_value(self.lambda * r))
    }

    /// `V / λ²` as a function of `ρ = λ r`; singular at `ρ = 0`.
    pub fn reduced_value(&self, rho: f64) -> f64 {
        let em = (-rho).exp();
        -self.c * (em - self.gamma) / rho.exp_m1()
    }

    /// `ρ V / λ²`, the regular part; tends to `-C (1 - γ)` at the origin.
    pub fn reduced_rho_times_value(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return -self.c * (1.0 - self.gamma);
        }
        let em = (-rho).exp();
        // rho / (e^rho - 1) is analytic at 0
        -self.c * (em - self.gamma) * (rho / rho.exp_m1())
    }

    /// `V / λ²` continued to complex `ρ`, evaluated through `exp(-ρ)` so
    /// that large `|ρ|` with `Re ρ > 0` does not overflow.
    pub fn reduced_value_complex(&self, rho: Complex64) -> Complex64 {
        let em = (-rho).exp();
        -self.c * em * (em - self.gamma) / (1.0 - em)
    }

    pub fn landmarks(&self) -> Result<Landmarks> {
        if !self.in_main_class() {
            return Err(Error::NoExtremum(self.gamma));
        }
        let s = (1.0 - self.gamma).sqrt();
        Ok(Landmarks {
            r0: -self.gamma.ln() / self.lambda,
            r1: -(1.0 - s).ln() / self.lambda,
            v_extremum: -self.v0() * (1.0 - s) * (1.0 - s),
            z_eff: self.z_eff(),
        })
    }
}
