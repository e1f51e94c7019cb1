//! Bound and resonance energies for any angular momentum by complex
//! rotation `r -> r e^{iθ}` in a Laguerre basis
//!
//! ```text
//! ξ_n(r) = c_n (ηr)^{ℓ+1} e^{-ηr/2} L_n^{(2ℓ+1)}(ηr).
//! ```
//!
//! Overlap and kinetic-plus-centrifugal matrices are tridiagonal in closed
//! form; the rotated potential is integrated by Gauss-Laguerre quadrature.
//! The generalized problem is reduced with the Cholesky factor of the
//! overlap, leaving a complex symmetric matrix whose eigenvalues are the
//! energies `ε = 2E/λ²`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{laguerre_eigentable, PotentialParams};
use crate::error::{Error, Result};

/// Relative disagreement allowed between the potential matrix at `K` and
/// `2K` quadrature nodes.
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

/// Bound points: `|Im ε| < BOUND_TOLERANCE · max(1, |Re ε|)` and `Re ε < 0`.
pub const BOUND_TOLERANCE: f64 = 1e-6;

/// Points within this angle (radians) of the rotated cut are continuum.
pub const CUT_ANGLE: f64 = 0.05;

pub const DEFAULT_SIZE: usize = 150;
pub const DEFAULT_THETA: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationConfig {
    pub l: u32,
    /// Rotation angle, `0 <= θ < π/2`.
    pub theta: f64,
    /// Basis scale (inverse length).
    pub eta: f64,
    pub size: usize,
    /// Gauss-Laguerre nodes for the potential, at least `2 * size`.
    pub quad_nodes: usize,
    /// Recompute the potential with twice the nodes and fail on
    /// disagreement.
    pub check_quadrature: bool,
}

impl RotationConfig {
    pub fn new(l: u32, theta: f64, eta: f64, size: usize) -> Result<Self> {
        let config = Self {
            l,
            theta,
            eta,
            size,
            quad_nodes: 2 * size + 20,
            check_quadrature: false,
        };
        config.validate()?;
        Ok(config)
    }

    /// Defaults scaled to the potential: `η = λ max(4, 2 sqrt|C|)`,
    /// `N = 150`, `θ = 1.1`.
    pub fn for_potential(params: &PotentialParams, l: u32) -> Self {
        let eta = params.lambda() * (2.0 * params.strength().abs().sqrt()).max(4.0);
        Self::new(l, DEFAULT_THETA, eta, DEFAULT_SIZE).expect("defaults are valid")
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_size(mut self, size: usize) -> Result<Self> {
        self.size = size;
        self.quad_nodes = self.quad_nodes.max(2 * size + 20);
        self.validate()?;
        Ok(self)
    }

    pub fn with_eta(mut self, eta: f64) -> Result<Self> {
        self.eta = eta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_quadrature_check(mut self, on: bool) -> Self {
        self.check_quadrature = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= 0.0 && self.theta < std::f64::consts::FRAC_PI_2) {
            return Err(Error::Config(format!(
                "rotation angle must satisfy 0 <= theta < pi/2, got {}",
                self.theta
            )));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::Config(format!("basis scale eta must be positive, got {}", self.eta)));
        }
        if self.size < 2 {
            return Err(Error::SizeTooSmall { min: 2, got: self.size });
        }
        if self.quad_nodes < 2 * self.size {
            return Err(Error::Config(format!(
                "quadrature needs at least 2N = {} nodes, got {}",
                2 * self.size,
                self.quad_nodes
            )));
        }
        Ok(())
    }
}

/// `J = x`-matrix of the Laguerre polynomials `(2n+a+1)δ + sqrt(n(n+a))`
/// on the off-diagonals with the given sign.
fn laguerre_tridiagonal(size: usize, a: f64, off_sign: f64) -> DMatrix<f64> {
    DMatrix::from_fn(size, size, |i, j| {
        if i == j {
            2.0 * i as f64 + a + 1.0
        } else if i.abs_diff(j) == 1 {
            let n = i.max(j) as f64;
            off_sign * (n * (n + a)).sqrt()
        } else {
            0.0
        }
    })
}

/// `⟨ξ_n| V(ρ e^{iθ}) |ξ_m⟩` in reduced units (`λ = 1`, scale `eta`).
fn potential_matrix(params: &PotentialParams, l: u32, theta: f64, eta: f64, size: usize, nodes: usize) -> Result<DMatrix<Complex64>> {
    let a = 2.0 * l as f64 + 1.0;
    let (x, table) = laguerre_eigentable(nodes, a, size)?;
    let rotation = Complex64::from_polar(1.0, theta);
    // x V(x e^{iθ}/η) / η, the 1/r singularity cancelled by x
    let f: Vec<Complex64> = x
        .iter()
        .map(|&xi| {
            let z = rotation * (xi / eta);
            params.reduced_value_complex(z) * xi / eta
        })
        .collect();
    let mut v = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for n in 0..size {
        for m in n..size {
            let s: Complex64 = (0..nodes).map(|i| f[i] * (table[n][i] * table[m][i])).sum();
            v[(n, m)] = s;
            v[(m, n)] = s;
        }
    }
    Ok(v)
}

/// `2 L⁻¹ H(θ) L⁻ᵀ` with `S = L Lᵀ`: complex symmetric, eigenvalues `ε`.
pub fn build_complex_hamiltonian(params: &PotentialParams, config: &RotationConfig) -> Result<DMatrix<Complex64>> {
    config.validate()?;
    let n = config.size;
    let a = 2.0 * config.l as f64 + 1.0;
    // everything in ρ = λr
    let eta = config.eta / params.lambda();
    let overlap = laguerre_tridiagonal(n, a, 1.0) / eta;
    let kinetic = laguerre_tridiagonal(n, a, -1.0) * (eta / 8.0);
    let v = potential_matrix(params, config.l, config.theta, eta, n, config.quad_nodes)?;
    if config.check_quadrature {
        let fine = potential_matrix(params, config.l, config.theta, eta, n, 2 * config.quad_nodes)?;
        let scale = v.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let diff = (&fine - &v).iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let estimate = diff / scale.max(f64::MIN_POSITIVE);
        if estimate > QUADRATURE_TOLERANCE {
            return Err(Error::Accuracy {
                what: "rotated potential quadrature",
                estimate,
                tolerance: QUADRATURE_TOLERANCE,
            });
        }
    }
    let phase = Complex64::from_polar(1.0, -2.0 * config.theta);
    let h = kinetic.map(|t| phase * t) + v;
    let l_factor = overlap.cholesky().ok_or(Error::NoConvergence)?.l();
    let l_inv = l_factor
        .solve_lower_triangular(&DMatrix::identity(n, n))
        .ok_or(Error::NoConvergence)?
        .map(|x| Complex64::new(x, 0.0));
    let reduced = &l_inv * h * l_inv.transpose();
    // restore the exact symmetry lost to rounding in the triple product
    Ok(DMatrix::from_fn(n, n, |i, j| reduced[(i, j)] + reduced[(j, i)]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Bound,
    Resonance,
    Cut,
    Unclassified,
}

impl PointKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Bound => "bound",
            Self::Resonance => "resonance",
            Self::Cut => "cut",
            Self::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub energy: Complex64,
    pub kind: PointKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpectrum {
    pub config: RotationConfig,
    /// Sorted by real part.
    pub points: Vec<SpectrumPoint>,
}

impl ComplexSpectrum {
    fn of_kind(&self, kind: PointKind) -> Vec<Complex64> {
        self.points.iter().filter(|p| p.kind == kind).map(|p| p.energy).collect()
    }

    /// Bound energies, deepest first.
    pub fn bound(&self) -> Vec<f64> {
        self.of_kind(PointKind::Bound).iter().map(|z| z.re).collect()
    }

    pub fn resonances(&self) -> Vec<Complex64> {
        self.of_kind(PointKind::Resonance)
    }

    pub fn cut(&self) -> Vec<Complex64> {
        self.of_kind(PointKind::Cut)
    }

    /// The eigenvalue closest to `target`.
    pub fn nearest(&self, target: Complex64) -> Option<SpectrumPoint> {
        self.points
            .iter()
            .copied()
            .min_by(|a, b| (a.energy - target).norm().total_cmp(&(b.energy - target).norm()))
    }
}

/// Angular distance between two angles.
fn angle_between(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

pub fn classify(energy: Complex64, theta: f64) -> PointKind {
    if energy.re < 0.0 && energy.im.abs() < BOUND_TOLERANCE * energy.re.abs().max(1.0) {
        return PointKind::Bound;
    }
    let arg = energy.arg();
    if angle_between(arg, -2.0 * theta) < CUT_ANGLE {
        return PointKind::Cut;
    }
    if energy.im < 0.0 && arg > -2.0 * theta {
        return PointKind::Resonance;
    }
    PointKind::Unclassified
}

pub fn complex_spectrum(params: &PotentialParams, config: &RotationConfig) -> Result<ComplexSpectrum> {
    let h = build_complex_hamiltonian(params, config)?;
    let values = h
        .schur()
        .eigenvalues()
        .ok_or(Error::NoConvergence)?;
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("complex eigenvalues"));
    }
    let mut points: Vec<SpectrumPoint> = values
        .iter()
        .map(|&energy| SpectrumPoint {
            energy,
            kind: classify(energy, config.theta),
        })
        .collect();
    points.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    Ok(ComplexSpectrum {
        config: *config,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StablePoint {
    pub energy: Complex64,
    pub kind: PointKind,
    /// Largest distance to the nearest eigenvalue over all grid runs,
    /// relative to `max(1, |ε|)`.
    pub drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub tolerance: f64,
    pub runs: usize,
    pub stable: Vec<StablePoint>,
    /// Non-cut points of the reference run that moved too much.
    pub unstable: Vec<StablePoint>,
}

/// Points of the first grid run that persist across every combination of
/// `thetas × sizes × etas`. Cut points are skipped.
pub fn stabilize(
    params: &PotentialParams,
    l: u32,
    thetas: &[f64],
    sizes: &[usize],
    etas: &[f64],
    tolerance: f64,
) -> Result<StabilityReport> {
    if thetas.is_empty() || sizes.is_empty() || etas.is_empty() {
        return Err(Error::Config("stabilization grids must be non-empty".into()));
    }
    let mut configs = Vec::new();
    for &theta in thetas {
        for &size in sizes {
            for &eta in etas {
                configs.push(RotationConfig::new(l, theta, eta, size)?);
            }
        }
    }
    let spectra: Vec<ComplexSpectrum> = configs
        .par_iter()
        .map(|c| complex_spectrum(params, c))
        .collect::<Result<_>>()?;
    let reference = &spectra[0];
    let mut stable = Vec::new();
    let mut unstable = Vec::new();
    for p in reference.points.iter().filter(|p| p.kind != PointKind::Cut) {
        let scale = p.energy.norm().max(1.0);
        let drift = spectra[1..]
            .iter()
            .filter_map(|s| s.nearest(p.energy))
            .map(|q| (q.energy - p.energy).norm() / scale)
            .fold(0.0_f64, f64::max);
        let point = StablePoint {
            energy: p.energy,
            kind: p.kind,
            drift,
        };
        if drift < tolerance {
            stable.push(point);
        } else {
            unstable.push(point);
        }
    }
    Ok(StabilityReport {
        tolerance,
        runs: spectra.len(),
        stable,
        unstable,
    })
}
