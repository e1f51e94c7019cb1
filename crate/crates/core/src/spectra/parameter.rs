//! Parameter spectra at fixed energy: the strength values `C` (at fixed
//! `γ`) or the shape values `γ` (at fixed `C`) for which the recursion
//! admits a bound solution.

use serde::{Deserialize, Serialize};

use crate::basis::mu_of_energy;
use crate::error::{Error, Result};
use crate::tridiag::{build_t_c, build_t_gamma, q_zeros_inverse};

/// Eigenvalues of `T_γ` with `|χ| <= CHI_CUTOFF * max|χ|` stand for
/// `C = ∞` and are dropped.
pub const CHI_CUTOFF: f64 = 1e-12;

/// Sign branch of the strength spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    /// Branch of a non-zero strength.
    pub fn of(c: f64) -> Option<Self> {
        if c > 0.0 {
            Some(Self::Positive)
        } else if c < 0.0 {
            Some(Self::Negative)
        } else {
            None
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpectrumKind {
    /// Strength values at the given shape.
    Strength { gamma: f64 },
    /// Shape values at the given strength.
    Shape { strength: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    /// Index within the branch (strength spectra) or in ascending order
    /// (shape spectra).
    pub index: usize,
    pub value: f64,
    /// `None` for shape spectra.
    pub branch: Option<Branch>,
    /// Shape spectra: `0 <= γ <= 1`. Strength spectra: always true.
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSpectrum {
    pub energy: f64,
    pub kind: SpectrumKind,
    pub size: usize,
    pub levels: Vec<SpectrumLevel>,
}

impl ParameterSpectrum {
    /// Values of one strength branch in level order: ascending for the
    /// positive branch, descending for the negative one.
    pub fn branch(&self, branch: Branch) -> Vec<f64> {
        self.levels
            .iter()
            .filter(|l| l.branch == Some(branch))
            .map(|l| l.value)
            .collect()
    }

    pub fn positive(&self) -> Vec<f64> {
        self.branch(Branch::Positive)
    }

    pub fn negative(&self) -> Vec<f64> {
        self.branch(Branch::Negative)
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// True when some level lies within `tol` (absolute) of `value`.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.levels.iter().any(|l| (l.value - value).abs() <= tol)
    }
}

fn check_energy(eps: f64) -> Result<()> {
    if eps.is_finite() && eps <= 0.0 {
        Ok(())
    } else {
        Err(Error::EnergyDomain {
            eps,
            constraint: "eps <= 0",
        })
    }
}

/// `γ`-spectrum at energy `eps`: eigenvalues `t` of `T_C` mapped to
/// `γ = (1 - t)/2`, ascending, with admissibility flags.
pub fn gamma_spectrum(eps: f64, c: f64, size: usize) -> Result<ParameterSpectrum> {
    check_energy(eps)?;
    let t = build_t_c(mu_of_energy(eps), c, size)?;
    let mut gammas: Vec<f64> = t.eigenvalues()?.iter().map(|t| 0.5 * (1.0 - t)).collect();
    gammas.sort_by(f64::total_cmp);
    let levels = gammas
        .into_iter()
        .enumerate()
        .map(|(index, value)| SpectrumLevel {
            index,
            value,
            branch: None,
            admissible: (0.0..=1.0).contains(&value),
        })
        .collect();
    Ok(ParameterSpectrum {
        energy: eps,
        kind: SpectrumKind::Shape { strength: c },
        size,
        levels,
    })
}

/// Strength levels of one branch at basis exponent `mu`, in level order.
pub(crate) fn branch_strengths(mu: f64, gamma: f64, size: usize, branch: Branch) -> Result<Vec<f64>> {
    let chi = build_t_gamma(mu, gamma, size)?.eigenvalues()?;
    let scale = chi.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cutoff = CHI_CUTOFF * scale;
    // χ ascending: the positive branch (χ < 0) comes first with |C|
    // ascending; the negative branch (χ > 0) has |C| ascending from the top.
    let out = match branch {
        Branch::Positive => chi
            .iter()
            .take_while(|&&x| x < -cutoff)
            .map(|x| -1.0 / x)
            .collect(),
        Branch::Negative => chi
            .iter()
            .rev()
            .take_while(|&&x| x > cutoff)
            .map(|x| -1.0 / x)
            .collect(),
    };
    Ok(out)
}

fn check_gamma(gamma: f64, lo: f64, hi: f64, closed: bool) -> Result<()> {
    let inside = if closed {
        gamma >= lo && gamma <= hi
    } else {
        gamma > lo && gamma < hi
    };
    if inside {
        Ok(())
    } else {
        Err(Error::GammaDomain { gamma, lo, hi })
    }
}

/// Strength spectrum at energy `eps` and shape `gamma` from the
/// eigenvalues `χ` of `T_γ`, `C = -1/χ`.
pub fn c_spectrum(eps: f64, gamma: f64, size: usize) -> Result<ParameterSpectrum> {
    check_energy(eps)?;
    check_gamma(gamma, 0.0, 1.0, true)?;
    let mu = mu_of_energy(eps);
    let mut levels = Vec::new();
    for branch in [Branch::Positive, Branch::Negative] {
        for (index, value) in branch_strengths(mu, gamma, size, branch)?.into_iter().enumerate() {
            levels.push(SpectrumLevel {
                index,
                value,
                branch: Some(branch),
                admissible: true,
            });
        }
    }
    Ok(ParameterSpectrum {
        energy: eps,
        kind: SpectrumKind::Strength { gamma },
        size,
        levels,
    })
}

/// Critical strengths `C_n^±(ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalStrengths {
    pub energy: f64,
    /// `C_n^+(ε)`, the positive branch at `γ = 0`.
    pub plus: Vec<f64>,
    /// `C_n^-(ε)`, the negative branch at `γ = 1`.
    pub minus: Vec<f64>,
}

pub fn critical_strengths(eps: f64, size: usize) -> Result<CriticalStrengths> {
    check_energy(eps)?;
    let mu = mu_of_energy(eps);
    Ok(CriticalStrengths {
        energy: eps,
        plus: branch_strengths(mu, 0.0, size, Branch::Positive)?,
        minus: branch_strengths(mu, 1.0, size, Branch::Negative)?,
    })
}

/// Zero-energy critical strengths `Ĉ_n(γ)` on the branch of `c`.
pub fn zero_energy_thresholds(gamma: f64, branch: Branch, size: usize) -> Result<Vec<f64>> {
    check_gamma(gamma, 0.0, 1.0, true)?;
    branch_strengths(0.0, gamma, size, branch)
}

/// Number of S-wave bound states: the count of thresholds `Ĉ_n(γ)` on the
/// branch of `c` with `|Ĉ_n| < |c|`.
pub fn bound_state_count(gamma: f64, c: f64, size: usize) -> Result<usize> {
    check_gamma(gamma, 0.0, 1.0, false)?;
    let Some(branch) = Branch::of(c) else {
        return Ok(0);
    };
    let thresholds = zero_energy_thresholds(gamma, branch, size)?;
    Ok(thresholds.iter().take_while(|t| t.abs() < c.abs()).count())
}

/// Strength spectrum from the zeros of `Q_N^μ`, ascending in `C`.
pub fn spectrum_via_polynomial_zeros(mu: f64, gamma: f64, size: usize) -> Result<Vec<f64>> {
    if size < 2 {
        return Err(Error::SizeTooSmall { min: 2, got: size });
    }
    let zeros = q_zeros_inverse(mu, gamma, size)?;
    let scale = zeros.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut c: Vec<f64> = zeros
        .iter()
        .filter(|x| x.abs() > CHI_CUTOFF * scale)
        .map(|x| 1.0 / x)
        .collect();
    c.sort_by(f64::total_cmp);
    Ok(c)
}
