//! Gauss-Jacobi and generalized Gauss-Laguerre rules built by the
//! Golub-Welsch eigen-decomposition of the recurrence (Jacobi) matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightKind {
    /// `(1-y)^a (1+y)^b` on `[-1, 1]`.
    Jacobi { a: f64, b: f64 },
    /// `x^a e^{-x}` on `[0, ∞)`.
    Laguerre { a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: WeightKind,
    mass: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of the weight function.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `table[n][i] = p_n(x_i) sqrt(w_i)` for the orthonormal polynomials
    /// of the weight, `n < count`. Products of rows integrate exactly
    /// against the weight up to the rule's degree.
    pub fn orthonormal_table(&self, count: usize) -> Vec<Vec<f64>> {
        let k = self.len();
        let mut table = vec![vec![0.0; k]; count];
        if count == 0 {
            return table;
        }
        let (alpha, beta) = recurrence(self.kind, count);
        for i in 0..k {
            let x = self.nodes[i];
            let mut prev = 0.0;
            let mut cur = (self.weights[i] / self.mass).sqrt();
            table[0][i] = cur;
            for n in 1..count {
                let b_prev = if n >= 2 { beta[n - 2] } else { 0.0 };
                let next = ((x - alpha[n - 1]) * cur - b_prev * prev) / beta[n - 1];
                prev = cur;
                cur = next;
                table[n][i] = cur;
            }
        }
        table
    }
}

/// Recurrence coefficients (diagonal, off-diagonal) of the orthonormal
/// polynomials for `count` terms.
fn recurrence(kind: WeightKind, count: usize) -> (Vec<f64>, Vec<f64>) {
    match kind {
        WeightKind::Jacobi { a, b } => {
            let ab = a + b;
            let diag = (0..count)
                .map(|k| {
                    let k = k as f64;
                    if k == 0.0 {
                        (b - a) / (ab + 2.0)
                    } else {
                        (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
                    }
                })
                .collect();
            let off = (1..count)
                .map(|k| {
                    let k = k as f64;
                    let s = 2.0 * k + ab;
                    let sq = if k == 1.0 {
                        // (k+a+b)/(s-1) cancels to 1 at k = 1
                        4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0))
                    } else {
                        4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
                    };
                    sq.sqrt()
                })
                .collect();
            (diag, off)
        }
        WeightKind::Laguerre { a } => {
            let diag = (0..count).map(|k| 2.0 * k as f64 + a + 1.0).collect();
            let off = (1..count)
                .map(|k| (k as f64 * (k as f64 + a)).sqrt())
                .collect();
            (diag, off)
        }
    }
}

fn build(kind: WeightKind, count: usize, mass: f64) -> Result<QuadratureRule> {
    if count == 0 {
        return Err(Error::EmptyQuadrature);
    }
    let (alpha, beta) = recurrence(kind, count);
    let jacobi = SymTridiag::new(alpha, beta)?;
    let (nodes, first) = jacobi.eigen_first_components()?;
    let weights = first.iter().map(|v| mass * v * v).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        kind,
        mass,
    })
}

/// `K`-point rule for `(1-y)^a (1+y)^b`, exact through degree `2K - 1`.
pub fn gauss_jacobi(count: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if !(a > -1.0 && b > -1.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::JacobiExponent(a, b));
    }
    let ln_mass = (a + b + 1.0) * std::f64::consts::LN_2 + libm::lgamma(a + 1.0)
        + libm::lgamma(b + 1.0)
        - libm::lgamma(a + b + 2.0);
    build(WeightKind::Jacobi { a, b }, count, ln_mass.exp())
}

/// Nodes of the `count`-point Laguerre rule for `x^a e^{-x}` together with
/// `table[n][i] = ± p_n(x_i) sqrt(w_i)` for `n < rows`, where `p_n` are the
/// orthonormal polynomials of the weight and the sign may differ per node.
///
/// The entries are read from the eigenvectors of the recurrence matrix, so
/// they stay accurate where the weights themselves underflow. Sums of
/// products `table[n][i] table[m][i]` over nodes are sign independent.
pub fn laguerre_eigentable(count: usize, a: f64, rows: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if !(a > -1.0 && a.is_finite()) {
        return Err(Error::JacobiExponent(a, 0.0));
    }
    if count == 0 {
        return Err(Error::EmptyQuadrature);
    }
    if rows > count {
        return Err(Error::Config(format!(
            "a {count}-point rule resolves at most {count} polynomials, asked for {rows}"
        )));
    }
    let (alpha, beta) = recurrence(WeightKind::Laguerre { a }, count);
    let eig = SymTridiag::new(alpha, beta)?.eigen()?;
    let vectors = eig.vectors.ok_or(Error::NoConvergence)?;
    let table = (0..rows)
        .map(|n| vectors.iter().map(|v| v[n]).collect())
        .collect();
    Ok((eig.values, table))
}

/// `K`-point rule for `x^a e^{-x}` on the half line.
pub fn gauss_laguerre(count: usize, a: f64) -> Result<QuadratureRule> {
    if !(a > -1.0 && a.is_finite()) {
        return Err(Error::JacobiExponent(a, 0.0));
    }
    build(WeightKind::Laguerre { a }, count, libm::tgamma(a + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn midpoint_rule() {
        let q = gauss_jacobi(1, 0.0, 0.0).unwrap();
        assert!(q.nodes[0].abs() < 1e-16);
        assert_relative_eq!(q.weights[0], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn legendre_exactness() {
        let q = gauss_jacobi(5, 0.0, 0.0).unwrap();
        assert!((q.integrate(|y| y.powi(8)) - 2.0 / 9.0).abs() < 1e-14);
        assert!(q.integrate(|y| y.powi(9)).abs() < 1e-14);
    }

    #[test]
    fn beta_mass() {
        // 2^{4.5} B(2.5, 3) with B(2.5, 3) = 16/315
        let q = gauss_jacobi(20, 1.5, 2.0).unwrap();
        let expected = 2.0_f64.powf(4.5) * 16.0 / 315.0;
        let total: f64 = q.weights.iter().sum();
        assert!((total - expected).abs() < 1e-12 * expected);
        assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(q.nodes.iter().all(|&y| y > -1.0 && y < 1.0));
        assert!(q.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn laguerre_moments() {
        // ∫ x^k x^a e^{-x} = Γ(k+a+1)
        let a = 1.0;
        let q = gauss_laguerre(12, a).unwrap();
        let mut expected = 1.0; // Γ(2)
        for k in 0..20 {
            if k > 0 {
                expected *= k as f64 + a;
            }
            let got = q.integrate(|x| x.powi(k));
            assert_relative_eq!(got, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn laguerre_table_matches_recurrence_where_weights_are_large() {
        let (nodes, table) = laguerre_eigentable(40, 3.0, 10).unwrap();
        let rule = gauss_laguerre(40, 3.0).unwrap();
        let direct = rule.orthonormal_table(10);
        for i in 0..10 {
            assert!((nodes[i] - rule.nodes[i]).abs() < 1e-12 * nodes[i]);
            let s = table[0][i].signum();
            for n in 0..10 {
                assert!((s * table[n][i] - direct[n][i]).abs() < 1e-10, "{n} {i}");
            }
        }
        // orthonormal rows
        for n in 0..10 {
            for m in 0..10 {
                let v: f64 = table[n].iter().zip(&table[m]).map(|(a, b)| a * b).sum();
                assert!((v - if n == m { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        assert!(laguerre_eigentable(5, 0.0, 6).is_err());
    }

    #[test]
    fn bad_exponents() {
        assert!(gauss_jacobi(4, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(0, 0.0, 0.0).is_err());
        assert!(gauss_laguerre(4, -2.0).is_err());
    }

    #[test]
    fn orthonormal_table_is_orthonormal() {
        for kind in [(0.0, 0.0), (0.5, 1.0), (2.0, 0.5), (1.0, 2.0)] {
            let q = gauss_jacobi(60, kind.0, kind.1).unwrap();
            let t = q.orthonormal_table(51);
            for n in 0..51 {
                for m in n..51 {
                    let s: f64 = t[n].iter().zip(&t[m]).map(|(a, b)| a * b).sum();
                    let e = if n == m { 1.0 } else { 0.0 };
                    assert!((s - e).abs() < 1e-12, "{kind:?} {n} {m} {s}");
                }
            }
        }
    }
}
