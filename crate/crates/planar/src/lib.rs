//! A concrete realisation of the 4-box space: a site space `h` with a cup,
//! a cap and a trivalent vertex `Y: h → h ⊗ h`, together with everything that
//! can be built from them.
//!
//! A 4-box is stored as an operator on two sites, a `n² × n²` matrix with row
//! index `(c, d)` (top legs) and column index `(a, b)` (bottom legs). In the
//! transfer-matrix picture the same box is read through [`SiteModel::rot`] as
//! a tensor `[N, E, W, S]`: one vertical strand (S → N) crossed by one
//! horizontal bond (W → E).

mod checks;
mod fit;
mod model;
mod report;
mod states;
mod transfer;

pub use checks::{
    correlation_sequence, cup_vacuum, density, eigen_residual, eigenvalues, exact_fixed_point, exact_two_cycle,
    hamiltonian_identity_residual, op_norm, printed_s_matrix, random_density, real_spectrum, s_basis, s_eigenpairs,
    s_matrix, scale_invariance_residual, weak_invariance_residual, Correlations,
};
pub use fit::{solve_b_basis, BasisFit, DictEntry};
pub use model::SiteModel;
pub use report::Report;
pub use states::{random_op, random_state, rng, StateRng};
pub use transfer::{labels_for_tree, Transfer};

use thiserror::Error;

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

pub type C = Complex64;
pub type Mat = DMatrix<C>;
pub type Vector = DVector<C>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator is singular")]
    Singular,
    #[error("no basis assignment fits (best residual {residual:.3e}, tolerance {tolerance:.1e})")]
    Fit { residual: f64, tolerance: f64 },
    #[error("missing label for leaf {0}")]
    MissingEntry(String),
    #[error("level {0} is out of range")]
    Level(usize),
    #[error("eigenvalue iteration did not converge")]
    Eigen,
}

pub type Result<T> = std::result::Result<T, PlanarError>;

/// Largest entry modulus.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// `max |a − b|` entrywise.
pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    max_abs(&(a - b))
}

/// `n^k`.
pub fn pow(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}
