use nalgebra::DMatrix;

use super::jacobi::{jacobi_sequence, BasisSpec};
use super::quadrature::gauss_jacobi;
use crate::error::{Error, Result};

/// Overlap `Θ_nm = λ ∫ φ_n φ_m dr = ⟨n| (1+y)/(1-y) |m⟩` of the first
/// `spec.size()` basis elements.
///
/// In `y = 1 - 2e^{-λr}` the integrand is a polynomial of degree `n + m`
/// against the weight `(1-y)^{μ-1} (1+y)^2`, so `size + 2` Gauss-Jacobi
/// nodes reproduce it up to rounding.
pub fn overlap_matrix(spec: &BasisSpec) -> Result<DMatrix<f64>> {
    overlap_matrix_with_nodes(spec, spec.size() + 2)
}

pub fn overlap_matrix_with_nodes(spec: &BasisSpec, nodes: usize) -> Result<DMatrix<f64>> {
    let mu = spec.mu();
    if !(mu > 0.0) {
        return Err(Error::NotNormalizable(mu));
    }
    let n = spec.size();
    let rule = gauss_jacobi(nodes, mu - 1.0, 2.0)?;
    let scale = (-(mu + 2.0) * std::f64::consts::LN_2).exp();
    let norms: Vec<f64> = (0..n).map(|k| spec.norm(k)).collect();
    let mut values = Vec::with_capacity(rule.len());
    for &y in &rule.nodes {
        let p = jacobi_sequence(n - 1, mu, 1.0, y)?;
        values.push(p);
    }
    let mut theta = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let s: f64 = values
                .iter()
                .zip(&rule.weights)
                .map(|(p, w)| w * p[i] * p[j])
                .sum();
            let v = scale * norms[i] * norms[j] * s;
            theta[(i, j)] = v;
            theta[(j, i)] = v;
        }
    }
    Ok(theta)
}

/// Gram matrix of the basis in the Jacobi `(μ, 1)` inner product; the
/// identity for a correctly normalized basis.
pub fn jacobi_gram_matrix(spec: &BasisSpec) -> Result<DMatrix<f64>> {
    let mu = spec.mu();
    let n = spec.size();
    let rule = gauss_jacobi(n + 1, mu, 1.0)?;
    let scale = (-(mu + 2.0) * std::f64::consts::LN_2).exp();
    let values: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|&y| jacobi_sequence(n - 1, mu, 1.0, y))
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let s: f64 = values
            .iter()
            .zip(&rule.weights)
            .map(|(p, w)| w * p[i] * p[j])
            .sum();
        scale * spec.norm(i) * spec.norm(j) * s
    }))
}
