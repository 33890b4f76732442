use num_complex::Complex64;

use crate::{IehVec, Q4Error, Result};

/// A concrete realisation of the 4-box space that can rotate basis elements.
pub trait RotationOracle {
    /// Loop value of the realisation.
    fn loop_value(&self) -> Complex64;

    /// Coordinates of `𝓕(X)` in `{1, E, H}` together with the least-squares
    /// residual of the fit.
    fn rotate_fit(&self, x: &IehVec<Complex64>) -> (IehVec<Complex64>, f64);
}

/// Determines `𝓕(H)` in `{1, E, H}` from an oracle and checks the
/// rotation contract: `𝓕(1) = E`, `𝓕(E) = 1`, `𝓕²(H) = H`.
pub fn derive_f_h(oracle: &dyn RotationOracle, tolerance: f64) -> Result<IehVec<Complex64>> {
    let (fh, r0) = oracle.rotate_fit(&IehVec::h());
    let (f1, r1) = oracle.rotate_fit(&IehVec::one());
    let (fe, r2) = oracle.rotate_fit(&IehVec::e());
    // 𝓕 is linear, so 𝓕²(H) follows from the images of the basis.
    let ffh = f1.scale(fh.x) + fe.scale(fh.y) + fh.scale(fh.z);
    let residual = [
        r0,
        r1,
        r2,
        f1.max_diff(&IehVec::e()),
        fe.max_diff(&IehVec::one()),
        ffh.max_diff(&IehVec::h()),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if residual > tolerance {
        return Err(Q4Error::Fit { residual, tolerance });
    }
    Ok(fh)
}
