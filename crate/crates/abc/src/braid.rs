use num_complex::Complex64;
use q4core::{inverse_b, LoopParam, Q4Vec};
use serde::{Deserialize, Serialize};

use crate::error::{nz, AbcError, Result};
use crate::spectral::family_a;

type C = Complex64;

const ONE: C = C::new(1.0, 0.0);

/// `R = (−ω−ω⁻¹)b1 + ω⁻¹b2 + (ω−1)b3`, which satisfies the braid relation.
pub fn braid_r(lp: &LoopParam<C>) -> Q4Vec<C> {
    let w = lp.omega();
    Q4Vec::new(-w - 1.0 / w, 1.0 / w, w - ONE)
}

/// `A(z)` written through `R`, `id = b2` and `R⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidRewrite {
    pub c_r: C,
    pub c_id: C,
    pub c_rinv: C,
    pub r: Q4Vec<C>,
    pub r_inv: Q4Vec<C>,
    pub id: Q4Vec<C>,
    /// `λ` with `A(z) = λ·(c_R R + c_id id + c_Rinv R⁻¹)`; equals the `b3`
    /// coefficient of `A(z)`.
    pub factor: C,
    /// Projective distance between `A(z)` and the recombination.
    pub residual: f64,
}

/// Coefficients
///
/// ```text
/// c_R    = 1/((1+z)(ω−1))
/// c_id   = z(1+ω+ω³+ω⁴)/((1+z)ω(z+ω²))
/// c_Rinv = zω/((1+z)(1−ω))
/// ```
///
/// The recombination agrees with `A(z)` up to the scalar `factor`.
pub fn braid_rewrite(z: C, lp: &LoopParam<C>) -> Result<BraidRewrite> {
    let w = lp.omega();
    let wm1 = nz(w - ONE, "omega - 1")?;
    let zp1 = nz(z + ONE, "z + 1")?;
    let c_r = ONE / (zp1 * wm1);
    let c_id = z * (ONE + w + w.powi(3) + w.powi(4)) / (zp1 * w * nz(z + w * w, "z + omega^2")?);
    let c_rinv = z * w / (zp1 * (ONE - w));
    let r = braid_r(lp);
    let r_inv = inverse_b(&r, lp)?;
    let id = Q4Vec::b2();
    let comb = r.scale(c_r) + id.scale(c_id) + r_inv.scale(c_rinv);
    let a = family_a(z, lp)?;
    let residual = a.projective_residual(&comb);
    if residual > 1e-8 {
        return Err(AbcError::LinearSolve(residual));
    }
    let factor = a.ratio_to(&comb)?;
    Ok(BraidRewrite {
        c_r,
        c_id,
        c_rinv,
        r,
        r_inv,
        id,
        factor,
        residual,
    })
}

/// `A′(x) = (1+z)(ω−1)ω^{−3/2}·(c_R R + c_id id + c_Rinv R⁻¹)` at `z = ω²/x`.
pub fn izergin_korepin(x: C, lp: &LoopParam<C>) -> Result<Q4Vec<C>> {
    let w = lp.omega();
    let z = w * w / nz(x, "x")?;
    let b = braid_rewrite(z, lp)?;
    let comb = b.r.scale(b.c_r) + b.id.scale(b.c_id) + b.r_inv.scale(b.c_rinv);
    Ok(comb.scale((ONE + z) * (w - ONE) * w.powf(-1.5)))
}
