use abc::{braid_r, family_a, spectrum_a, CoherentChoice};
use nalgebra::DMatrix;
use num_complex::Complex64;
use planar::{labels_for_tree, max_abs, max_diff, op_norm, solve_b_basis, BasisFit, Transfer};
use q4core::{inverse_b, LoopParam, Q4Vec};
use serde::{Deserialize, Serialize};
use trees::full_tree;

use crate::cable::Cable;
use crate::error::{Result, TlError};

type C = Complex64;
type Mat = DMatrix<C>;

/// Orbit length used when admitting spectral values for coherent choices.
pub const ORBIT_STEPS: usize = 20;

impl Cable {
    /// `(d, ω)` for the cabled theory, `d = δ² − 1`.
    pub fn loop_param(&self) -> LoopParam<C> {
        LoopParam::<C>::from_d(self.delta * self.delta - 1.0)
    }

    pub fn fit_b_basis(&self, tolerance: f64) -> Result<BasisFit> {
        Ok(solve_b_basis(&self.model, None, tolerance)?)
    }

    /// Transfer-view operator `𝓕(A(z))`.
    pub fn checked_a(&self, z: C) -> Result<Mat> {
        let a = family_a(z, &self.loop_param())?;
        Ok(self.model.rot(&self.model.op(&a)))
    }
}

fn kron3(a: &Mat, n: usize, left: bool) -> Mat {
    let id = Mat::identity(n, n);
    if left {
        a.kronecker(&id)
    } else {
        id.kronecker(a)
    }
}

/// `R = (−ω−ω⁻¹)b1 + ω⁻¹b2 + (ω−1)b3` and its inverse on two cabled sites.
#[derive(Debug, Clone)]
pub struct BraidCheck {
    /// `‖R₁R₂R₁ − R₂R₁R₂‖` (max entry) on three sites.
    pub braid: f64,
    /// `‖R + R⁻¹ + (ω+ω⁻¹)(b2+b3)‖`.
    pub sum_identity: f64,
    /// `‖R − R⁻¹ + (ω−ω⁻¹)(b2−b3)‖`.
    pub difference_identity: f64,
    /// `‖R⁻¹ − op((−ω−ω⁻¹)b1 + ωb2 + (ω⁻¹−1)b3)‖`.
    pub inverse_closed_form: f64,
}

pub fn braid_check(cab: &Cable) -> Result<BraidCheck> {
    let lp = cab.loop_param();
    let m = &cab.model;
    let w = lp.omega();
    let r = m.op(&braid_r(&lp));
    let r_inv = r.clone().try_inverse().ok_or(TlError::Domain("R is singular"))?;
    let n = m.n();
    let (r1, r2) = (kron3(&r, n, true), kron3(&r, n, false));
    let braid = max_diff(&(&r1 * &r2 * &r1), &(&r2 * &r1 * &r2));
    let b2 = m.identity();
    let b3 = m.cupcap();
    let sum_identity = max_abs(&(&r + &r_inv + (&b2 + &b3) * (w + 1.0 / w)));
    let difference_identity = max_abs(&(&r - &r_inv + (&b2 - &b3) * (w - 1.0 / w)));
    let closed = m.op(&inverse_b(&braid_r(&lp), &lp)?);
    let expected = m.op(&Q4Vec::new(-w - 1.0 / w, w, 1.0 / w - 1.0));
    Ok(BraidCheck {
        braid,
        sum_identity,
        difference_identity,
        inverse_closed_form: max_diff(&r_inv, &expected).max(max_diff(&closed, &expected)),
    })
}

/// How the middle spectral parameter of the Yang-Baxter equation is built
/// from the outer ones, in additive variables `λ` with `x = −e^{−λ}`,
/// `z = ω²/x` and `ω = e^{−η/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeConvention {
    pub form: YbeForm,
    /// Multiple of `η/2` added to the combination.
    pub shift: i32,
    /// Adds `iπ`, i.e. `x → −x`.
    pub flip: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum YbeForm {
    /// `ν = λ + μ + …`
    Sum,
    /// `ν = λ − μ + …`
    Difference,
}

impl YbeConvention {
    /// The convention under which the cabled operators satisfy the equation:
    /// `ν = λ + μ − 3η/2 + iπ`, equivalently `z_mid = ω·z₁·z₂`.
    pub const DISCOVERED: Self = Self {
        form: YbeForm::Sum,
        shift: -3,
        flip: true,
    };

    /// All scanned conventions: both forms, shifts `−4..=4`, with and
    /// without the flip.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        for form in [YbeForm::Sum, YbeForm::Difference] {
            for shift in -4..=4 {
                for flip in [false, true] {
                    out.push(Self { form, shift, flip });
                }
            }
        }
        out
    }

    pub fn middle(&self, lambda: C, mu: C, eta: C) -> C {
        let base = match self.form {
            YbeForm::Sum => lambda + mu,
            YbeForm::Difference => lambda - mu,
        };
        let flip = if self.flip {
            C::new(0.0, std::f64::consts::PI)
        } else {
            C::new(0.0, 0.0)
        };
        base + eta * (self.shift as f64 / 2.0) + flip
    }
}

/// `z = ω²/x` with `x = −e^{−λ}`.
pub fn z_of_lambda(lambda: C, lp: &LoopParam<C>) -> C {
    let w = lp.omega();
    -w * w * lambda.exp()
}

pub fn eta_of(lp: &LoopParam<C>) -> C {
    -2.0 * lp.omega().ln()
}

/// `max|Ř(λ)₁Ř(ν)₂Ř(μ)₁ − Ř(μ)₂Ř(ν)₁Ř(λ)₂| / max|lhs|` on three cabled sites,
/// with `Ř(λ) = 𝓕(A(z(λ)))`.
pub fn ybe_residual(lambda: C, mu: C, cab: &Cable, conv: YbeConvention) -> Result<f64> {
    let lp = cab.loop_param();
    let nu = conv.middle(lambda, mu, eta_of(&lp));
    let ops = [lambda, mu, nu].map(|l| cab.checked_a(z_of_lambda(l, &lp)));
    let [a, b, c] = ops;
    ybe_residual_ops(&a?, &b?, &c?, cab.model.n())
}

/// The same residual for given two-site operators `Ř(λ)`, `Ř(μ)`, `Ř(ν)`.
pub fn ybe_residual_ops(a: &Mat, b: &Mat, mid: &Mat, n: usize) -> Result<f64> {
    let lhs = kron3(a, n, true) * kron3(mid, n, false) * kron3(b, n, true);
    let rhs = kron3(b, n, false) * kron3(mid, n, true) * kron3(a, n, false);
    Ok(max_diff(&lhs, &rhs) / max_abs(&lhs).max(f64::MIN_POSITIVE))
}

/// Residual of every convention in [`YbeConvention::all`]; conventions whose
/// middle parameter hits a pole of `A` report infinity.
pub fn scan_conventions(lambda: C, mu: C, cab: &Cable) -> Vec<(YbeConvention, f64)> {
    YbeConvention::all()
        .into_iter()
        .map(|c| (c, ybe_residual(lambda, mu, cab, c).unwrap_or(f64::INFINITY)))
        .collect()
}

/// Labels of a transfer matrix at `z = −e^{−λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelMode {
    /// `A(z)` on every site.
    Uniform,
    /// The coherent choice with both subtree labels `A(z)`, read off the
    /// complete tree with `sites` leaves.
    Tree,
}

pub fn transfer_labels(lambda: C, cab: &Cable, sites: usize, mode: LabelMode) -> Result<Vec<Mat>> {
    let lp = cab.loop_param();
    let z = -(-lambda).exp();
    match mode {
        LabelMode::Uniform => Ok(vec![cab.model.op(&family_a(z, &lp)?); sites]),
        LabelMode::Tree => {
            if !sites.is_power_of_two() || sites < 2 {
                return Err(TlError::Domain("tree labels need 2, 4, 8, ... sites"));
            }
            let choice = CoherentChoice::from_z(z, z, &lp, ORBIT_STEPS)?;
            let level = sites.trailing_zeros() as usize;
            Ok(labels_for_tree(&cab.model, &full_tree(level), &choice)?)
        }
    }
}

/// `‖[T^λ, T^μ]‖ / (‖T^λ‖‖T^μ‖)` in operator norm.
pub fn commute_residual(lambda: C, mu: C, cab: &Cable, sites: usize, mode: LabelMode) -> Result<f64> {
    if !(2..=4).contains(&sites) {
        return Err(TlError::Domain("commuting transfers are checked on 2 to 4 sites"));
    }
    let m = &cab.model;
    let tl = Transfer::new(m, &transfer_labels(lambda, cab, sites, mode)?).dense();
    let tm = Transfer::new(m, &transfer_labels(mu, cab, sites, mode)?).dense();
    let comm = &tl * &tm - &tm * &tl;
    Ok(op_norm(&comm) / (op_norm(&tl) * op_norm(&tm)).max(f64::MIN_POSITIVE))
}

/// Eigenvalues of the compressed `A(z)` against the closed form with
/// multiplicities `(1, 3, 5)`, after removing one global scalar. Returns the
/// worst relative mismatch.
pub fn spectrum_residual(z: C, cab: &Cable) -> Result<f64> {
    let lp = cab.loop_param();
    let a = cab.model.op(&family_a(z, &lp)?);
    let eigs = planar::eigenvalues(&a)?;
    let s = spectrum_a(z, &lp)?;
    let expected: Vec<C> = [(s[0], 1), (s[1], 3), (s[2], 5)]
        .iter()
        .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
        .collect();
    if eigs.len() != expected.len() {
        return Err(TlError::Domain("compressed two-site space is not nine-dimensional"));
    }
    let kappa = eigs.iter().sum::<C>() / expected.iter().sum::<C>();
    let mut left: Vec<C> = eigs.iter().map(|e| e / kappa).collect();
    let scale = expected.iter().map(|e| e.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for e in expected {
        let (i, dist) = left
            .iter()
            .enumerate()
            .map(|(i, x)| (i, (x - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        worst = worst.max(dist / scale);
        left.swap_remove(i);
    }
    Ok(worst)
}
