use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("range parameter lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),

    #[error(
        "gamma = {gamma} lies outside the main solvability class 0 < gamma < 1 \
         and gamma*V0 = {product} is not positive"
    )]
    OutsideSolvabilityClass { gamma: f64, product: f64 },

    #[error("potential is singular at the origin; radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("the potential has no extremum unless 0 < gamma < 1 (gamma = {0})")]
    NoExtremum(f64),

    #[error("Jacobi exponents must exceed -1, got ({0}, {1})")]
    JacobiExponent(f64, f64),

    #[error("quadrature needs at least one node")]
    EmptyQuadrature,

    #[error("overlap and kernel diverge for mu = {0} (zero energy is not normalizable)")]
    NotNormalizable(f64),

    #[error("potential strength C must be non-zero")]
    DegenerateStrength,

    #[error("matrix size must be at least {min}, got {got}")]
    SizeTooSmall { min: usize, got: usize },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("energy must satisfy {constraint}, got eps = {eps}")]
    EnergyDomain { eps: f64, constraint: &'static str },

    #[error("gamma must lie in [{lo}, {hi}], got {gamma}")]
    GammaDomain { gamma: f64, lo: f64, hi: f64 },

    #[error("trace of level {level} is not usable: {reason}")]
    Trace { level: usize, reason: String },

    #[error("continued-fraction order {order} needs at least {order} samples, have {samples}")]
    FitOrder { order: usize, samples: usize },

    #[error("level {level} is not bound (only {count} bound states)")]
    LevelNotBound { level: usize, count: usize },

    #[error("{what}: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Accuracy {
        what: &'static str,
        estimate: f64,
        tolerance: f64,
    },

    #[error("matching radius {rho} is inside the potential range (|W| = {residual:.3e})")]
    MatchingRange { rho: f64, residual: f64 },

    #[error("no resonance signature in the phase-shift curve: {0}")]
    NoResonance(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
