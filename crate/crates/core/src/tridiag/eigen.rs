//! Real symmetric tridiagonal matrices and their eigen-decomposition.
//!
//! Full spectra use the implicit QL iteration with Wilkinson shifts; single
//! eigenvalues can be bracketed by Sturm-sequence bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTridiag {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

/// Eigenvalues in ascending order with optional column eigenvectors.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector belonging to `values[k]`.
    pub vectors: Option<Vec<Vec<f64>>>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::SizeTooSmall { min: 1, got: 0 });
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Config(format!(
                "off-diagonal length {} does not match diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("tridiagonal matrix"));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(ql_implicit(self, Accumulate::None)?.0)
    }

    pub fn eigen(&self) -> Result<TridiagEigen> {
        let (values, acc) = ql_implicit(self, Accumulate::Full)?;
        Ok(TridiagEigen {
            values,
            vectors: acc,
        })
    }

    /// Eigenvalues together with the first component of each unit
    /// eigenvector (the Golub-Welsch quantities).
    pub fn eigen_first_components(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let (values, acc) = ql_implicit(self, Accumulate::FirstRow)?;
        let first = acc.map(|mut rows| rows.swap_remove(0)).unwrap_or_default();
        Ok((values, first))
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0_f64;
        for i in 0..self.len() {
            let b2 = if i == 0 {
                0.0
            } else {
                self.offdiag[i - 1] * self.offdiag[i - 1]
            };
            q = self.diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (self.diag[i].abs() + x.abs() + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn kth_eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::Config(format!(
                "eigenvalue index {k} out of range for size {}",
                self.len()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Accumulate {
    None,
    FirstRow,
    Full,
}

/// Implicit QL with Wilkinson shifts (after the EISPACK `tql2` routine).
/// Returns ascending eigenvalues and, when requested, either the full
/// eigenvector set or just their first components.
fn ql_implicit(t: &SymTridiag, acc: Accumulate) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>)> {
    let n = t.len();
    let mut d = t.diag.clone();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&t.offdiag);

    // z[row][col]; only row 0 is kept for FirstRow
    let rows = match acc {
        Accumulate::None => 0,
        Accumulate::FirstRow => 1,
        Accumulate::Full => n,
    };
    let mut z: Vec<Vec<f64>> = (0..rows)
        .map(|i| {
            let mut r = vec![0.0; n];
            r[i] = 1.0;
            r
        })
        .collect();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let zi1 = row[i + 1];
                    row[i + 1] = s * row[i] + c * zi1;
                    row[i] = c * row[i] - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("eigenvalues"));
    }
    let vectors = match acc {
        Accumulate::None => None,
        Accumulate::FirstRow => Some(vec![order.iter().map(|&k| z[0][k]).collect()]),
        Accumulate::Full => Some(
            order
                .iter()
                .map(|&k| (0..n).map(|row| z[row][k]).collect())
                .collect(),
        ),
    };
    Ok((values, vectors))
}
