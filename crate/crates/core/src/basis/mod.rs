//! Potential evaluation, Jacobi polynomials, the energy-dependent basis,
//! Gauss quadrature and the basis overlap matrix.

mod jacobi;
mod overlap;
mod potential;
pub mod quadrature;

pub use jacobi::{basis_element, energy_of_mu, jacobi_eval, jacobi_sequence, mu_of_energy, BasisSpec};
pub use overlap::{jacobi_gram_matrix, overlap_matrix, overlap_matrix_with_nodes};
pub use potential::{Landmarks, PotentialParams};
pub use quadrature::{gauss_jacobi, gauss_laguerre, laguerre_eigentable, QuadratureRule, WeightKind};
