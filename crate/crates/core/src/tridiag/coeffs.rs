use serde::{Deserialize, Serialize};

use super::eigen::SymTridiag;
use crate::error::{Error, Result};

/// Coefficients of the three-term recursion for the expansion
/// coefficients at fixed `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecursionCoeffs {
    pub a: f64,
    pub d: f64,
    pub b: f64,
}

/// `a_n = (n+1)(n+μ+1)`, `d_n = (μ²-1)/((2n+μ+1)(2n+μ+3))`,
/// `b_n = 2/(2n+μ+3) sqrt((n+1)(n+2)(n+μ+1)(n+μ+2)/((2n+μ+2)(2n+μ+4)))`.
pub fn recursion_coefficients(mu: f64, n: usize) -> RecursionCoeffs {
    let n = n as f64;
    let a = (n + 1.0) * (n + mu + 1.0);
    let d = (mu * mu - 1.0) / ((2.0 * n + mu + 1.0) * (2.0 * n + mu + 3.0));
    let b = 2.0 / (2.0 * n + mu + 3.0)
        * ((n + 1.0) * (n + 2.0) * (n + mu + 1.0) * (n + mu + 2.0)
            / ((2.0 * n + mu + 2.0) * (2.0 * n + mu + 4.0)))
            .sqrt();
    RecursionCoeffs { a, d, b }
}

/// Scaled coefficients `(𝒜_n, ℬ_n)` of the strength recursion:
/// `𝒜_n = (2γ - 1 - d_n)/a_n`, `ℬ_n = b_n / sqrt(a_n a_{n+1})`.
pub fn scaled_coefficients(mu: f64, gamma: f64, n: usize) -> (f64, f64) {
    let c = recursion_coefficients(mu, n);
    let next = recursion_coefficients(mu, n + 1);
    ((2.0 * gamma - 1.0 - c.d) / c.a, c.b / (c.a * next.a).sqrt())
}

/// `T_γ` with `T_γ g = -C^{-1} g`.
pub fn build_t_gamma(mu: f64, gamma: f64, size: usize) -> Result<SymTridiag> {
    if size == 0 {
        return Err(Error::SizeTooSmall { min: 1, got: 0 });
    }
    let (diag, mut off): (Vec<f64>, Vec<f64>) =
        (0..size).map(|n| scaled_coefficients(mu, gamma, n)).unzip();
    off.pop();
    SymTridiag::new(diag, off)
}

/// `T_C` with `T_C f = (1 - 2γ) f`.
pub fn build_t_c(mu: f64, c: f64, size: usize) -> Result<SymTridiag> {
    if c == 0.0 {
        return Err(Error::DegenerateStrength);
    }
    if size == 0 {
        return Err(Error::SizeTooSmall { min: 1, got: 0 });
    }
    let coeffs: Vec<RecursionCoeffs> = (0..size).map(|n| recursion_coefficients(mu, n)).collect();
    let diag = coeffs.iter().map(|k| k.a / c - k.d).collect();
    let off = coeffs[..size - 1].iter().map(|k| k.b).collect();
    SymTridiag::new(diag, off)
}
