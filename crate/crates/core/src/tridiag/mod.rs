//! Recursion coefficients, the symmetric tridiagonal wave-operator
//! matrices `T_C` and `T_γ`, their eigen-solver, and the recursion
//! polynomials.

mod coeffs;
mod eigen;
mod polynomials;

pub use coeffs::{build_t_c, build_t_gamma, recursion_coefficients, scaled_coefficients, RecursionCoeffs};
pub use eigen::{SymTridiag, TridiagEigen};
pub use polynomials::{
    p_polynomials, p_recursion_residuals, q_polynomials, q_polynomials_inverse, q_zeros_above,
    q_zeros_inverse,
};
