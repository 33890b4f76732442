use crate::error::{nonzero, Result};
use crate::{IehVec, LoopParam, Q4Vec, Scalar};

fn s<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

/// Quarter rotation `𝓕` on the 4-box space:
/// `𝓕(1) = E`, `𝓕(E) = 1`, `𝓕(H) = H − (1 − E)/(d − 1)`.
pub fn rotate<S: Scalar>(x: &IehVec<S>, lp: &LoopParam<S>) -> Result<IehVec<S>> {
    let dm1 = nonzero(lp.d() - S::one(), "d - 1")?;
    let t = x.z.clone() / dm1;
    Ok(IehVec::new(x.y.clone() - t.clone(), x.x.clone() + t, x.z.clone()))
}

/// `𝓕` in b-coordinates: `(p, q, r) ↦ (p, r − p/(d−1), q + p/(d−1))`.
pub fn rotate_b<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    Ok(rotate(&x.to_ieh(), lp)?.to_q4())
}

/// Multiplicative inverse of a b-vector.
pub fn inverse_b<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    Ok(x.to_ieh().inverse(lp)?.to_q4())
}

/// Inverse for the rotated ("comultiplication") product: `𝓕(𝓕(X)⁻¹)`.
pub fn coinverse_b<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    rotate_b(&inverse_b(&rotate_b(x, lp)?, lp)?, lp)
}

pub fn is_invertible<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> bool {
    x.to_ieh().is_invertible(lp)
}

/// Invertible for the rotated product, i.e. `𝓕(X)` invertible.
pub fn is_coinvertible<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> bool {
    match rotate_b(x, lp) {
        Ok(f) => is_invertible(&f, lp),
        Err(_) => false,
    }
}

/// `α(X) = 𝓕(X⁻¹)` in closed form:
///
/// ```text
/// α(p,q,r) = ( −p/(q(p+q)),
///              (pq + pr + qr − d·qr)/(q(d−1)(p+q)(q+dr)),
///              ((d−2)p + (d−1)q)/((d−1)q(p+q)) )
/// ```
pub fn alpha<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    let d = lp.d();
    let (p, q, r) = (x.p.clone(), x.q.clone(), x.r.clone());
    let dm1 = nonzero(d.clone() - S::one(), "d - 1")?;
    let q_ = nonzero(q.clone(), "q")?;
    let pq = nonzero(p.clone() + q.clone(), "p + q")?;
    let qdr = nonzero(q.clone() + d.clone() * r.clone(), "q + d*r")?;
    let a1 = -p.clone() / (q_.clone() * pq.clone());
    let a2 = (p.clone() * q.clone() + p.clone() * r.clone() + q.clone() * r.clone()
        - d.clone() * q.clone() * r.clone())
        / (q_.clone() * dm1.clone() * pq.clone() * qdr);
    let a3 = ((d - s(2)) * p + dm1.clone() * q) / (dm1 * q_ * pq);
    Ok(Q4Vec::new(a1, a2, a3))
}

/// `α` computed through the idempotent decomposition; agrees with [`alpha`].
pub fn alpha_via_ieh<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    rotate_b(&inverse_b(x, lp)?, lp)
}

/// `β(X) = 𝓕(X)⁻¹`, the inverse map of `α`.
pub fn beta<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    inverse_b(&rotate_b(x, lp)?, lp)
}

/// `α^k` for any integer `k` (negative powers use `β`).
pub fn alpha_pow<S: Scalar>(x: &Q4Vec<S>, k: i32, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    let mut y = x.clone();
    for _ in 0..k.unsigned_abs() {
        y = if k > 0 { alpha(&y, lp)? } else { beta(&y, lp)? };
    }
    Ok(y)
}

/// The renormalisation quadratic `𝓡(X) = X!X` in b-coordinates.
pub fn renorm_r<S: Scalar>(x: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    let d = lp.d();
    let dm1 = nonzero(d.clone() - S::one(), "d - 1")?;
    let dm1_2 = dm1.clone() * dm1.clone();
    let dm1_3 = dm1_2.clone() * dm1.clone();
    let (p, q, r) = (x.p.clone(), x.q.clone(), x.r.clone());
    let pp = p.clone() * p.clone();
    let qq = q.clone() * q.clone();
    let pq2 = s::<S>(2) * p.clone() * q.clone();
    let c1 = (d.clone() * d.clone() - s::<S>(5) * d.clone() + s(7)) / dm1_2;
    let c2 = s::<S>(2) * (d.clone() - s(2)) / dm1.clone();
    let c3 = (d.clone() * d.clone() - s::<S>(3) * d + s(3)) / dm1_3.clone();
    let first = c1 * pp.clone() + pq2.clone() + c2 * p * r.clone() + qq.clone() + r.clone() * r;
    let second = -pp.clone() / dm1_3 - (pq2.clone() + qq.clone()) / dm1.clone();
    let third = c3 * pp + (pq2 + qq) / dm1;
    Ok(Q4Vec::new(first, second, third))
}

/// Symmetric bilinear form of [`renorm_r`]: `A!B = (𝓡(A+B) − 𝓡(A−B))/4`
/// (the renormalisation product is commutative on this space).
pub fn renorm_product<S: Scalar>(a: &Q4Vec<S>, b: &Q4Vec<S>, lp: &LoopParam<S>) -> Result<Q4Vec<S>> {
    let plus = renorm_r(&(a.clone() + b.clone()), lp)?;
    let minus = renorm_r(&(a.clone() - b.clone()), lp)?;
    Ok((plus - minus).scale(S::one() / s(4)))
}

pub const GOLDEN: f64 = 1.618_033_988_749_895;

/// The two-dimensional map at the golden ratio, in `(b2, b3)` coordinates.
///
/// At `d = φ` the idempotent `1 − E/d − H` is negligible and the quotient is
/// spanned by `b2, b3` with `b1 = b2 − b3/d`. The map is [`renorm_r`] followed
/// by that reduction:
/// `(q, r) ↦ (r² − q²/d, d·q² − (q² + r²)/d)`.
pub fn renorm_r_golden(q: f64, r: f64) -> (f64, f64) {
    let d = GOLDEN;
    let lp = LoopParam::new(d);
    let y = renorm_r(&Q4Vec::new(0.0, q, r), &lp).expect("d = φ is admissible");
    (y.q + y.p, y.r - y.p / d)
}

/// Spectral ratio `(q + d·r)/q` of a point of the golden quotient; the map
/// acts on it as a rational map of the projective line.
pub fn golden_ratio_coord(q: f64, r: f64) -> f64 {
    (q + GOLDEN * r) / q
}

/// `σ(a) = −(d−1)((d²−3d+1)a + d²−3d+2)/((d−2)a + d−1)`.
pub fn sigma<S: Scalar>(a: &S, lp: &LoopParam<S>) -> Result<S> {
    let d = lp.d();
    let den = nonzero((d.clone() - s(2)) * a.clone() + d.clone() - S::one(), "(d-2)a + d - 1")?;
    let dd = d.clone() * d.clone() - s::<S>(3) * d.clone();
    let num = (dd.clone() + S::one()) * a.clone() + dd + s(2);
    Ok(-(d - S::one()) * num / den)
}

/// Eigenvalues `{x + y·d, x + z, x}` of multiplication by `X`.
pub fn ieh_spectrum<S: Scalar>(x: &IehVec<S>, lp: &LoopParam<S>) -> [S; 3] {
    x.spectrum(lp)
}
