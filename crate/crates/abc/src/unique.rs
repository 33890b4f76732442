use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use q4core::{renorm_product, LoopParam, Q4Vec};
use serde::{Deserialize, Serialize};

use crate::error::{AbcError, Result};
use crate::{verify_abc_eqs, AbcTriple};

/// Every real solution found by the brute-force solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    /// Coefficients (constant term first) of `det M(a₃)`.
    pub det_coeffs: Vec<f64>,
    pub roots: Vec<Complex64>,
    pub solutions: Vec<AbcTriple<f64>>,
    /// Real roots whose linear system had no finite solution.
    pub rejected: usize,
}

fn residuals(a: f64, a3: f64, b1: f64, b3: f64, lp: &LoopParam<f64>) -> Result<Vector3<f64>> {
    let ta = Q4Vec::new(a, 1.0, a3);
    let tb = Q4Vec::new(b1, 1.0, b3);
    let c = renorm_product(&ta, &tb, lp)?;
    let [e1, e2, e3] = verify_abc_eqs(&AbcTriple::new(ta, tb, c), lp)?;
    Ok(Vector3::new(e1, e2, e3))
}

/// With `C = A!B`, `a₁ = a` and `a₂ = b₂ = 1` the three equations are affine
/// in `(b₁, b₃)` for fixed `a₃`; columns are `(∂b₁, ∂b₃, const)`.
fn system(a: f64, a3: f64, lp: &LoopParam<f64>) -> Result<Matrix3<f64>> {
    let r0 = residuals(a, a3, 0.0, 0.0, lp)?;
    let r1 = residuals(a, a3, 1.0, 0.0, lp)? - r0;
    let r3 = residuals(a, a3, 0.0, 1.0, lp)? - r0;
    Ok(Matrix3::from_columns(&[r1, r3, r0]))
}

fn poly_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Solves the three equations for `(a₃, b₁, b₃)` by eliminating `b` (a cubic
/// determinant in `a₃`), then back-substituting every real root.
pub fn brute_force_family(a: f64, d: f64) -> Result<UniquenessReport> {
    let lp = LoopParam::new(d);
    let samples: Vec<f64> = (0..8).map(|i| -3.5 + i as f64).collect();
    let dets = samples
        .iter()
        .map(|&t| system(a, t, &lp).map(|m| m.determinant()))
        .collect::<Result<Vec<_>>>()?;
    let vander = DMatrix::from_fn(samples.len(), 4, |i, j| samples[i].powi(j as i32));
    let rhs = DVector::from_vec(dets.clone());
    let svd = vander.clone().svd(true, true);
    let coeffs = svd
        .solve(&rhs, 1e-14)
        .map_err(|_| AbcError::Degenerate("determinant fit"))?;
    let fit_err = (&vander * &coeffs - &rhs).amax();
    let scale = rhs.amax().max(1e-300);
    if fit_err > 1e-8 * scale {
        return Err(AbcError::Degenerate("determinant is not cubic"));
    }
    let cmax = coeffs.amax();
    if cmax <= 1e-12 * scale {
        return Err(AbcError::Degenerate("determinant vanishes identically"));
    }
    let mut det_coeffs: Vec<f64> = coeffs.iter().copied().collect();
    while det_coeffs.len() > 1 && det_coeffs.last().unwrap().abs() <= 1e-10 * cmax {
        det_coeffs.pop();
    }
    let roots = poly_roots(&det_coeffs);
    let mut solutions = Vec::new();
    let mut rejected = 0;
    for root in &roots {
        if root.im.abs() > 1e-8 * (1.0 + root.re.abs()) {
            continue;
        }
        let a3 = root.re;
        let m = system(a, a3, &lp)?;
        let lhs = m.fixed_columns::<2>(0).into_owned();
        let b = -m.column(2);
        let sol = lhs
            .svd(true, true)
            .solve(&b, 1e-12)
            .map_err(|_| AbcError::Degenerate("back substitution"))?;
        let res = residuals(a, a3, sol[0], sol[1], &lp)?;
        if res.amax() > 1e-8 * (1.0 + sol.amax()) {
            rejected += 1;
            continue;
        }
        let ta = Q4Vec::new(a, 1.0, a3);
        let tb = Q4Vec::new(sol[0], 1.0, sol[1]);
        let c = renorm_product(&ta, &tb, &lp)?;
        solutions.push(AbcTriple::new(ta, tb, c));
    }
    Ok(UniquenessReport {
        det_coeffs,
        roots,
        solutions,
        rejected,
    })
}
