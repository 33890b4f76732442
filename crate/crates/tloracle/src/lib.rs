//! Temperley-Lieb diagrams, their spin-½ representation, and the 4-box
//! operators obtained by doubling strands and compressing with the
//! two-strand Jones-Wenzl projector. The cabled theory has loop value
//! `d = δ² − 1`.

mod cable;
mod diagram;
mod element;
mod error;
mod integrable;
mod rep;

pub use cable::{
    cable_cap, cable_cup, covertex_diagram, homomorphism_residual, tl_rank, vertex_diagram, Cable, RANK_TOL,
};
pub use diagram::{Point, TLDiagram};
pub use element::{jw2, tl_compose, TLElement};
pub use error::{Result, TlError};
pub use integrable::{
    braid_check, commute_residual, eta_of, scan_conventions, spectrum_residual, transfer_labels, ybe_residual,
    ybe_residual_ops, z_of_lambda, BraidCheck, LabelMode, YbeConvention, YbeForm, ORBIT_STEPS,
};
pub use rep::{tl_rep, SpinRep};

/// Default loop value of the underlying Temperley-Lieb algebra.
pub const DEFAULT_DELTA: f64 = 1.9;
