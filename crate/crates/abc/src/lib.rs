//! The ABC equation at coefficient level: the one-parameter solution family,
//! its spectral parametrisation, the α-orbit, coherent label choices over
//! binary trees, the `d = 3` line-pair branch and the braid-basis rewrite.

mod braid;
mod coherent;
mod d3;
mod error;
mod family;
mod spectral;
mod unique;

pub use braid::{braid_r, braid_rewrite, izergin_korepin, BraidRewrite};
pub use coherent::{Class, CoherentChoice, Entry, Precision, Root};
pub use d3::{d3_a1, d3_a2, d3_scaling_predicate, d3_solutions, v_of_s, w_of_t, D3Branch, D3Report};
pub use error::{AbcError, Result};
pub use family::{solve_unique_family, successors, verify_abc_eqs, AbcTriple};
pub use spectral::{
    a_of_z, alpha_orbit_defined, alpha_prefactor, alpha_relation_residual, c_factor, family_a, family_z,
    scales_predicate, spectrum_a, SpectralParams,
};
pub use unique::{brute_force_family, UniquenessReport};
