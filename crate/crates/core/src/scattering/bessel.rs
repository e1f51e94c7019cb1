//! Riccati-Bessel functions `ĵ_ℓ(x) = x j_ℓ(x)` and `ŷ_ℓ(x) = x y_ℓ(x)`,
//! with `ĵ_0 = sin x` and `ŷ_0 = -cos x`.

/// `(ĵ_ℓ(x), ŷ_ℓ(x))` for `x > 0`.
pub fn riccati_bessel(l: u32, x: f64) -> (f64, f64) {
    let (j, y) = sequences(l, x);
    (j[l as usize], y[l as usize])
}

/// Derivatives `(ĵ_ℓ'(x), ŷ_ℓ'(x))` from `f_ℓ' = f_{ℓ-1} - (ℓ/x) f_ℓ`,
/// with `ĵ_{-1} = cos x` and `ŷ_{-1} = sin x`.
pub fn riccati_bessel_derivative(l: u32, x: f64) -> (f64, f64) {
    let (j, y) = sequences(l, x);
    let l = l as usize;
    if l == 0 {
        return (x.cos(), x.sin());
    }
    let lf = l as f64;
    (j[l - 1] - lf / x * j[l], y[l - 1] - lf / x * y[l])
}

fn sequences(l: u32, x: f64) -> (Vec<f64>, Vec<f64>) {
    let l = l as usize;
    let (s, c) = x.sin_cos();
    let mut y = vec![-c];
    if l >= 1 {
        y.push(-c / x - s);
    }
    for n in 1..l {
        let next = (2 * n + 1) as f64 / x * y[n] - y[n - 1];
        y.push(next);
    }
    // upward recurrence for ĵ loses accuracy once x < ℓ; switch to the
    // power series there
    let j = if x >= l as f64 {
        let mut j = vec![s];
        if l >= 1 {
            j.push(s / x - c);
        }
        for n in 1..l {
            let next = (2 * n + 1) as f64 / x * j[n] - j[n - 1];
            j.push(next);
        }
        j
    } else {
        (0..=l).map(|n| series_j(n, x)).collect()
    };
    (j, y)
}

/// `x j_n(x) = x^{n+1}/(2n+1)!! Σ_k (-x²/2)^k / (k! Π_{i=1..k} (2n+2i+1))`.
fn series_j(n: usize, x: f64) -> f64 {
    let mut lead = x;
    for i in 0..n {
        lead *= x / (2 * i + 3) as f64;
    }
    let z = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= z / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}
