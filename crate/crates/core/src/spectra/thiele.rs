//! Point-wise rational interpolation by Thiele's continued fraction
//!
//! ```text
//! f(x) = a_0 + (x - x_0) / (a_1 + (x - x_1) / (a_2 + ...))
//! ```
//!
//! with coefficients from inverse differences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_NUDGES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThieleFraction {
    nodes: Vec<f64>,
    coeffs: Vec<f64>,
}

impl ThieleFraction {
    /// Interpolant through `(xs[i], ys[i])`. A vanishing inverse
    /// difference is resolved by moving the offending sample value by one
    /// ulp and refitting.
    pub fn fit(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::Config(format!(
                "continued fraction needs matching non-empty samples ({} vs {})",
                xs.len(),
                ys.len()
            )));
        }
        if xs.iter().chain(ys).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("continued-fraction samples"));
        }
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("continued fraction needs distinct abscissae".into()));
        }
        let mut ys = ys.to_vec();
        for _ in 0..=MAX_NUDGES {
            match inverse_differences(xs, &ys) {
                Ok(coeffs) => {
                    return Ok(Self {
                        nodes: xs.to_vec(),
                        coeffs,
                    })
                }
                Err(i) => ys[i] = ys[i].next_up(),
            }
        }
        Err(Error::Config("continued fraction is degenerate".into()))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let m = self.coeffs.len();
        let mut v = self.coeffs[m - 1];
        for k in (0..m - 1).rev() {
            v = self.coeffs[k] + (x - self.nodes[k]) / v;
        }
        v
    }
}

/// Returns the index of the sample that produced a zero denominator on
/// failure.
fn inverse_differences(xs: &[f64], ys: &[f64]) -> std::result::Result<Vec<f64>, usize> {
    let m = xs.len();
    let mut phi = ys.to_vec();
    let mut coeffs = Vec::with_capacity(m);
    coeffs.push(phi[0]);
    for k in 1..m {
        let pivot = phi[k - 1];
        for i in k..m {
            let den = phi[i] - pivot;
            let v = (xs[i] - xs[k - 1]) / den;
            if den == 0.0 || !v.is_finite() {
                return Err(i);
            }
            phi[i] = v;
        }
        coeffs.push(phi[k]);
    }
    Ok(coeffs)
}
