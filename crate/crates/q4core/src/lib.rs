//! Coefficient-level algebra of the three-dimensional 4-box space `Q4`.
//!
//! Elements are written either in the b-basis `(p, q, r)` or in the diagram
//! basis `{1, E, H}` (identity, cup-cap, two-vertex box). The two are related
//! by `b1 = H`, `b2 = 1`, `b3 = E`.

mod error;
mod fit;
mod maps;
mod param;
mod scalar;
mod vec;

pub use error::{nonzero, Q4Error, Result};
pub use fit::{derive_f_h, RotationOracle};
pub use maps::{
    alpha, alpha_pow, alpha_via_ieh, beta, coinverse_b, golden_ratio_coord, ieh_spectrum, inverse_b, is_coinvertible,
    is_invertible, renorm_product, renorm_r, renorm_r_golden, rotate, rotate_b, sigma, GOLDEN,
};
pub use param::LoopParam;
pub use scalar::{c64, rat, Scalar, FLOAT_ZERO};
pub use vec::{chart, lift, ChartPoint, IehVec, Q4Vec};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
