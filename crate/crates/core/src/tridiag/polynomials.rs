//! The polynomials `Q_n^μ(C)` (degree `n` in `C^{-1}`) generated by the
//! strength recursion, and `P_n^μ(γ) = sqrt(a_0/a_n) Q_n^μ(C)`.

use super::coeffs::{recursion_coefficients, scaled_coefficients};
use crate::error::{Error, Result};

/// `Q_0 .. Q_n` at strength `c`:
/// `Q_0 = 1`, `Q_1 = -(C^{-1} + 𝒜_0)/ℬ_0`,
/// `Q_k = -[(C^{-1} + 𝒜_{k-1}) Q_{k-1} + ℬ_{k-2} Q_{k-2}] / ℬ_{k-1}`.
pub fn q_polynomials(mu: f64, gamma: f64, c: f64, n: usize) -> Result<Vec<f64>> {
    if c == 0.0 {
        return Err(Error::DegenerateStrength);
    }
    Ok(q_polynomials_inverse(mu, gamma, 1.0 / c, n))
}

/// Same recursion parameterized by `x = C^{-1}`; `x = 0` is allowed.
pub fn q_polynomials_inverse(mu: f64, gamma: f64, x: f64, n: usize) -> Vec<f64> {
    let coeffs: Vec<(f64, f64)> = (0..n.max(1)).map(|k| scaled_coefficients(mu, gamma, k)).collect();
    let mut q = Vec::with_capacity(n + 1);
    q.push(1.0);
    for k in 1..=n {
        let (a_prev, b_prev) = coeffs[k - 1];
        let mut v = (x + a_prev) * q[k - 1];
        if k >= 2 {
            v += coeffs[k - 2].1 * q[k - 2];
        }
        q.push(-v / b_prev);
    }
    q
}

/// `P_0 .. P_n` with `P_k = sqrt(a_0/a_k) Q_k`.
pub fn p_polynomials(mu: f64, gamma: f64, c: f64, n: usize) -> Result<Vec<f64>> {
    let q = q_polynomials(mu, gamma, c, n)?;
    let a0 = recursion_coefficients(mu, 0).a;
    Ok(q
        .iter()
        .enumerate()
        .map(|(k, v)| (a0 / recursion_coefficients(mu, k).a).sqrt() * v)
        .collect())
}

/// Residual of the `γ`-recursion
/// `(1-2γ) P_k = (a_k/C - d_k) P_k + b_{k-1} P_{k-1} + b_k P_{k+1}`
/// for `k = 0 .. P.len()-2`, relative to the largest term.
pub fn p_recursion_residuals(mu: f64, gamma: f64, c: f64, p: &[f64]) -> Vec<f64> {
    (0..p.len().saturating_sub(1))
        .map(|k| {
            let ck = recursion_coefficients(mu, k);
            let lhs = (1.0 - 2.0 * gamma) * p[k];
            let mut terms = vec![(ck.a / c - ck.d) * p[k], ck.b * p[k + 1]];
            if k > 0 {
                terms.push(recursion_coefficients(mu, k - 1).b * p[k - 1]);
            }
            let rhs: f64 = terms.iter().sum();
            let scale = terms.iter().chain(std::iter::once(&lhs)).fold(0.0_f64, |m, t| m.max(t.abs()));
            (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE)
        })
        .collect()
}

/// Number of zeros of `Q_n` (in `x = C^{-1}`) strictly greater than `x`.
///
/// Uses the monic form `p_k = (x + 𝒜_{k-1}) p_{k-1} - ℬ_{k-2}² p_{k-2}`, a
/// Sturm sequence whose sign changes count zeros above `x`; values are
/// rescaled as they go so large degrees do not overflow.
pub fn q_zeros_above(mu: f64, gamma: f64, x: f64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let coeffs: Vec<(f64, f64)> = (0..n).map(|k| scaled_coefficients(mu, gamma, k)).collect();
    let mut prev = 1.0_f64;
    let mut cur = x + coeffs[0].0;
    let mut last_sign = 1.0_f64;
    let mut changes = 0;
    for k in 1..=n {
        if k >= 2 {
            let b = coeffs[k - 2].1;
            let next = (x + coeffs[k - 1].0) * cur - b * b * prev;
            prev = cur;
            cur = next;
            let m = cur.abs().max(prev.abs());
            if m > 1e100 || (m < 1e-100 && m > 0.0) {
                prev /= m;
                cur /= m;
            }
        }
        // an exact zero takes the sign opposite to its predecessor
        let s = if cur == 0.0 { -last_sign } else { cur.signum() };
        if s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    changes
}

/// All `n` zeros of `Q_n` as values of `x = C^{-1}`, ascending, found by
/// bisection on the Sturm count.
pub fn q_zeros_inverse(mu: f64, gamma: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    // Gershgorin bound on the roots of the monic recursion
    let coeffs: Vec<(f64, f64)> = (0..n).map(|k| scaled_coefficients(mu, gamma, k)).collect();
    let mut bound: f64 = 0.0;
    for k in 0..n {
        let mut r = coeffs[k].0.abs();
        if k > 0 {
            r += coeffs[k - 1].1.abs();
        }
        if k + 1 < n {
            r += coeffs[k].1.abs();
        }
        bound = bound.max(r);
    }
    let bound = bound * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    let mut zeros = Vec::with_capacity(n);
    for j in 0..n {
        // the zero with exactly n - 1 - j zeros above it
        let want_above = n - 1 - j;
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..2100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if q_zeros_above(mu, gamma, mid, n) > want_above {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        zeros.push(0.5 * (lo + hi));
    }
    Ok(zeros)
}
