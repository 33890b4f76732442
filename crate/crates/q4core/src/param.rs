use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Loop value `d` together with an optional deformation `ω`, `d = ω + ω⁻¹ + 1`.
///
/// Exact scalars usually carry only `d` (ω is irrational for most rational d).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopParam<S> {
    pub d: S,
    pub omega: Option<S>,
}

impl<S: Scalar> LoopParam<S> {
    pub fn new(d: S) -> Self {
        Self { d, omega: None }
    }

    /// Builds the parameter from ω. Panics if ω vanishes.
    pub fn from_omega(omega: S) -> Self {
        assert!(!omega.vanishes(), "omega must be nonzero");
        let d = omega.clone() + S::one() / omega.clone() + S::one();
        Self { d, omega: Some(omega) }
    }

    /// `|ω + ω⁻¹ + 1 − d|`, or 0 when ω is absent.
    pub fn invariant_residual(&self) -> f64 {
        match &self.omega {
            Some(w) => (w.clone() + S::one() / w.clone() + S::one() - self.d.clone()).modulus(),
            None => 0.0,
        }
    }

    pub(crate) fn d(&self) -> S {
        self.d.clone()
    }
}

impl LoopParam<Complex64> {
    /// Chooses the root ω of `ω² − (d−1)ω + 1 = 0` with `|ω| ≥ 1`
    /// (for `d ∈ (−1, 3)` both roots lie on the unit circle; the one with
    /// nonnegative imaginary part is taken).
    pub fn from_d(d: f64) -> Self {
        let b = Complex64::new(d - 1.0, 0.0);
        let disc = (b * b - 4.0).sqrt();
        let w1 = (b + disc) / 2.0;
        let w2 = (b - disc) / 2.0;
        let omega = if (w1.norm() - w2.norm()).abs() > 1e-12 {
            if w1.norm() > w2.norm() {
                w1
            } else {
                w2
            }
        } else if w1.im >= w2.im {
            w1
        } else {
            w2
        };
        Self {
            d: Complex64::new(d, 0.0),
            omega: Some(omega),
        }
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
            .expect("omega is always set for complex loop parameters built here")
    }

    pub fn d_re(&self) -> f64 {
        self.d.re
    }
}

impl LoopParam<f64> {
    pub fn real(d: f64) -> Self {
        Self::new(d)
    }

    pub fn to_complex(&self) -> LoopParam<Complex64> {
        LoopParam::<Complex64>::from_d(self.d)
    }
}
