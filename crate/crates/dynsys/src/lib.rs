//! Iteration, fixed and periodic points, back-iteration, the coalescence scan
//! and basin portraits for `𝓡(X) = X!X` in the chart `(q/p, r/p)`.

mod chart;
mod fixed;
mod portrait;

pub use chart::{chart_map, chart_map_s, iterate, jacobian, jacobian_s, OrbitRecord};
pub use fixed::{
    back_iterate, classify, coalescence_scan, complex_fixed_points, eig2, fixed_points, newton_fixed_point,
    rescale_constants, saddle_multiplier, FixedPointReport, SearchBox, Stability, NEUTRAL_BAND,
};
pub use portrait::{portrait, Attractor, Portrait, PortraitRow};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynError {
    #[error("singular Jacobian at ({0}, {1})")]
    SingularJacobian(f64, f64),
    #[error("Newton did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("criterion has the same sign at {lo} and {hi}")]
    NotBracketed { lo: f64, hi: f64 },
    #[error("vacuum value vanishes at n = {0}")]
    DivisionByZero(usize),
    #[error(transparent)]
    Q4(#[from] q4core::Q4Error),
    #[error(transparent)]
    Csv(#[from] CsvError),
}

/// Wrapper so the error stays `Clone + PartialEq`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("csv: {0}")]
pub struct CsvError(pub String);

pub type Result<T> = std::result::Result<T, DynError>;
