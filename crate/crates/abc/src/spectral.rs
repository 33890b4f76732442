use num_complex::Complex64;
use q4core::{alpha, beta, LoopParam, Q4Vec};
use serde::{Deserialize, Serialize};

use crate::error::{nz, AbcError, Result};
use crate::AbcTriple;

type C = Complex64;

const ONE: C = C::new(1.0, 0.0);

/// The spectral variables attached to one member of the family:
/// `a = −((1+ω²)/ω²)·(z+ω²)/(z+1)`, `x = ω²/z`, and with `ω = e^{−η/2}`,
/// `x = −e^{−λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub z: C,
    pub a: C,
    pub x: C,
    pub lambda: C,
    pub eta: C,
}

impl SpectralParams {
    pub fn from_z(z: C, lp: &LoopParam<C>) -> Result<Self> {
        let w = lp.omega();
        let a = a_of_z(z, lp)?;
        let x = w * w / nz(z, "z")?;
        Ok(Self {
            z,
            a,
            x,
            lambda: -(-x).ln(),
            eta: -2.0 * w.ln(),
        })
    }

    /// Builds the parameters from `(λ, η)`; also returns the loop parameter
    /// `ω = e^{−η/2}`.
    pub fn from_lambda(lambda: C, eta: C) -> Result<(Self, LoopParam<C>)> {
        let w = (-eta / 2.0).exp();
        let lp = LoopParam::from_omega(w);
        let x = -(-lambda).exp();
        let z = w * w / x;
        let a = a_of_z(z, &lp)?;
        Ok((Self { z, a, x, lambda, eta }, lp))
    }

    /// Largest violation among the defining relations.
    pub fn invariant_residual(&self, lp: &LoopParam<C>) -> f64 {
        let w = lp.omega();
        let a = a_of_z(self.z, lp).map_or(f64::INFINITY, |a| (a - self.a).norm());
        let x = (self.x * self.z - w * w).norm();
        let l = (self.x + (-self.lambda).exp()).norm();
        let e = (w - (-self.eta / 2.0).exp()).norm();
        a.max(x).max(l).max(e)
    }
}

fn check_generic(lp: &LoopParam<C>) -> Result<C> {
    let w = lp.omega();
    if (w - ONE).norm() < 1e-12 {
        return Err(AbcError::UseD3Branch);
    }
    Ok(w)
}

/// `a(z) = −((1+ω²)/ω²)·(z+ω²)/(z+1)`.
pub fn a_of_z(z: C, lp: &LoopParam<C>) -> Result<C> {
    let w = lp.omega();
    let w2 = w * w;
    Ok(-(ONE + w2) / w2 * (z + w2) / nz(z + ONE, "z + 1")?)
}

/// `A(z) = (a(z), 1, −(ω−1)(z+ω²)/(ω(ωz−1)))`.
pub fn family_a(z: C, lp: &LoopParam<C>) -> Result<Q4Vec<C>> {
    let w = lp.omega();
    let a = a_of_z(z, lp)?;
    let r = -(w - ONE) * (z + w * w) / (w * nz(w * z - ONE, "omega*z - 1")?);
    Ok(Q4Vec::new(a, ONE, r))
}

/// `c(z) = (z+ω⁴)/(ω(z+ω²))`, so that `C(z) = c(z)·A(−z/ω)`.
pub fn c_factor(z: C, lp: &LoopParam<C>) -> Result<C> {
    let w = lp.omega();
    Ok((z + w.powi(4)) / (w * nz(z + w * w, "z + omega^2")?))
}

/// The triple `A = A(z)`, `B = A(z/ω²)`, `C = c(z)·A(−z/ω)`.
pub fn family_z(z: C, lp: &LoopParam<C>) -> Result<AbcTriple<C>> {
    let w = check_generic(lp)?;
    let a = family_a(z, lp)?;
    let b = family_a(z / (w * w), lp)?;
    let c = family_a(-z / w, lp)?.scale(c_factor(z, lp)?);
    Ok(AbcTriple::new(a, b, c))
}

/// Eigenvalues of `A(z)`, ordered as `(q + d·r, q + p, q)`:
/// `((z−ω⁵)/(ω²(ωz−1)), −(z+ω⁴)/(ω²(z+1)), 1)`.
pub fn spectrum_a(z: C, lp: &LoopParam<C>) -> Result<[C; 3]> {
    let w = lp.omega();
    let w2 = w * w;
    let first = (z - w.powi(5)) / (w2 * nz(w * z - ONE, "omega*z - 1")?);
    let second = -(z + w.powi(4)) / (w2 * nz(z + ONE, "z + 1")?);
    Ok([first, second, ONE])
}

/// `ω²(ω³−z)(ω²+z)/((ω⁵−z)(ω⁴+z))`, the scalar in `α(A(z)) = ·A(−z/ω³)`.
pub fn alpha_prefactor(z: C, lp: &LoopParam<C>) -> Result<C> {
    let w = lp.omega();
    let num = w * w * (w.powi(3) - z) * (w * w + z);
    let den = nz(w.powi(5) - z, "omega^5 - z")? * nz(w.powi(4) + z, "omega^4 + z")?;
    Ok(num / den)
}

/// Largest component of `α(A(z)) − pref(z)·A(−z/ω³)`, relative to `1 + ‖α(A(z))‖`.
pub fn alpha_relation_residual(z: C, lp: &LoopParam<C>) -> Result<f64> {
    let w = check_generic(lp)?;
    let lhs = alpha(&family_a(z, lp)?, lp)?;
    let rhs = family_a(-z / w.powi(3), lp)?.scale(alpha_prefactor(z, lp)?);
    Ok(lhs.max_diff(&rhs) / (1.0 + lhs.norm()))
}

/// Smallest eigenvalue modulus (relative to the vector norm) that still counts
/// as invertible along an orbit.
pub(crate) const ORBIT_TOL: f64 = 1e-9;

/// Applies `α` (or `β` when `k < 0`) `|k|` times, normalising in between and
/// requiring every intermediate element to be invertible and coinvertible.
pub(crate) fn orbit_walk(x: &Q4Vec<C>, k: i32, lp: &LoopParam<C>) -> Result<Q4Vec<C>> {
    let mut y = x.clone();
    for _ in 0..k.unsigned_abs() {
        y = normalised_checked(&y, lp)?;
        y = if k > 0 { alpha(&y, lp)? } else { beta(&y, lp)? };
    }
    normalised_checked(&y, lp)
}

fn normalised_checked(y: &Q4Vec<C>, lp: &LoopParam<C>) -> Result<Q4Vec<C>> {
    let n = y.norm();
    if !n.is_finite() || n == 0.0 {
        return Err(AbcError::Domain("orbit element"));
    }
    let y = y.scale(C::new(1.0 / n, 0.0));
    let spec = y.to_ieh().spectrum(lp);
    let fspec = q4core::rotate_b(&y, lp)?.to_ieh().spectrum(lp);
    if spec.iter().chain(fspec.iter()).any(|s| s.norm() < ORBIT_TOL) {
        return Err(AbcError::Domain("orbit element is singular"));
    }
    Ok(y)
}

/// Whether `nmax` forward and `nmax` backward α-steps of `A(z), B(z), C(z)`
/// stay in the domain.
pub fn alpha_orbit_defined(z: C, lp: &LoopParam<C>, nmax: usize) -> bool {
    let Ok(t) = family_z(z, lp) else {
        return false;
    };
    let n = nmax as i32;
    [t.a, t.b, t.c]
        .iter()
        .all(|x| orbit_walk(x, n, lp).is_ok() && orbit_walk(x, -n, lp).is_ok())
}

/// `z ∉ {±ωⁿ : |n| ≤ nmax}` (relative distance `1e−8`), and the two-sided
/// α-orbit of the triple at `z` is defined for `nmax` steps.
pub fn scales_predicate(z: C, lp: &LoopParam<C>, nmax: usize) -> bool {
    let Ok(w) = check_generic(lp) else {
        return false;
    };
    let n = nmax as i32;
    for k in -n..=n {
        let wk = w.powi(k);
        let tol = 1e-8 * wk.norm().max(1.0);
        if (z - wk).norm() <= tol || (z + wk).norm() <= tol {
            return false;
        }
    }
    alpha_orbit_defined(z, lp, nmax)
}
