use num_complex::Complex64;
use q4core::{ChartPoint, LoopParam, Scalar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chart::{chart_map, chart_map_s, jacobian, jacobian_s};
use crate::{DynError, Result};

/// `| |λ| − 1 |` at or below this counts as neutral.
pub const NEUTRAL_BAND: f64 = 1e-8;

const NEWTON_CAP: usize = 80;
const NEWTON_STEP_TOL: f64 = 1e-13;
const DIVERGED: f64 = 1e6;
const DEDUP: f64 = 1e-6;
/// A neutral multiplier makes the Newton matrix singular at the solution.
const RESIDUAL_ZERO: f64 = 1e-15;
const DEGENERATE: f64 = 1e-4;
const CLUSTER: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Repelling,
    Attracting,
    /// Mixed: one expanding and one contracting direction.
    Unstable,
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub location: ChartPoint,
    pub period: usize,
    pub jacobian_eigs: [Complex64; 2],
    pub class: Stability,
    /// `‖F^period(x) − x‖` in the chart.
    pub residual: f64,
}

/// Axis-aligned square grid of seeds (or portrait cells).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            lo: -3.0,
            hi: 3.0,
            step: 0.05,
        }
    }
}

impl SearchBox {
    pub fn new(lo: f64, hi: f64, step: f64) -> Self {
        Self { lo, hi, step }
    }

    pub fn axis(&self) -> Vec<f64> {
        if self.step <= 0.0 || self.hi < self.lo {
            return Vec::new();
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }

    /// Row-major points, `v` varying fastest.
    pub fn points(&self) -> Vec<ChartPoint> {
        let ax = self.axis();
        ax.iter()
            .flat_map(|&u| ax.iter().map(move |&v| ChartPoint::new(u, v)))
            .collect()
    }
}

/// Eigenvalues of a 2×2 matrix.
pub fn eig2(m: [[Complex64; 2]; 2]) -> [Complex64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr / 4.0 - det).sqrt();
    [tr / 2.0 + disc, tr / 2.0 - disc]
}

pub fn classify(eigs: &[Complex64; 2]) -> Stability {
    let m = eigs.map(|e| e.norm());
    if m.iter().any(|x| (x - 1.0).abs() <= NEUTRAL_BAND) {
        Stability::Neutral
    } else if m.iter().all(|&x| x > 1.0) {
        Stability::Repelling
    } else if m.iter().all(|&x| x < 1.0) {
        Stability::Attracting
    } else {
        Stability::Unstable
    }
}

fn matmul<S: Scalar>(a: &[[S; 2]; 2], b: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `F^period` and its Jacobian at `(u, v)`.
fn power_with_jacobian<S: Scalar>(u: &S, v: &S, lp: &LoopParam<S>, period: usize) -> Result<((S, S), [[S; 2]; 2])> {
    let (mut x, mut y) = (u.clone(), v.clone());
    let mut jac = [[S::one(), S::zero()], [S::zero(), S::one()]];
    for _ in 0..period {
        let j = jacobian_s(&x, &y, lp)?;
        jac = matmul(&j, &jac);
        let (nx, ny) = chart_map_s(&x, &y, lp)?;
        x = nx;
        y = ny;
    }
    Ok(((x, y), jac))
}

/// Solves `2×2` `m·δ = rhs`.
fn solve2<S: Scalar>(m: [[S; 2]; 2], rhs: (S, S), at: (f64, f64)) -> Result<(S, S)> {
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    if det.vanishes() {
        return Err(DynError::SingularJacobian(at.0, at.1));
    }
    let x = (m[1][1].clone() * rhs.0.clone() - m[0][1].clone() * rhs.1.clone()) / det.clone();
    let y = (m[0][0].clone() * rhs.1 - m[1][0].clone() * rhs.0) / det;
    Ok((x, y))
}

/// Newton's method for `F^period(x) = target`, or for `F^period(x) = x` when
/// `target` is `None`.
fn newton<S: Scalar>(seed: (S, S), lp: &LoopParam<S>, period: usize, target: Option<&(S, S)>) -> Result<(S, S)> {
    let (mut u, mut v) = seed;
    for _ in 0..NEWTON_CAP {
        let ((fu, fv), mut jac) = power_with_jacobian(&u, &v, lp, period)?;
        let (gu, gv) = match target {
            Some((tu, tv)) => (fu - tu.clone(), fv - tv.clone()),
            None => {
                jac[0][0] = jac[0][0].clone() - S::one();
                jac[1][1] = jac[1][1].clone() - S::one();
                (fu - u.clone(), fv - v.clone())
            }
        };
        if gu.modulus().hypot(gv.modulus()) < RESIDUAL_ZERO {
            return Ok((u, v));
        }
        let (du, dv) = solve2(jac, (-gu, -gv), (u.modulus(), v.modulus()))?;
        u = u + du.clone();
        v = v + dv.clone();
        let step = du.modulus().hypot(dv.modulus());
        if !step.is_finite() || u.modulus().hypot(v.modulus()) > DIVERGED {
            return Err(DynError::NoConvergence(NEWTON_CAP));
        }
        if step < NEWTON_STEP_TOL * (1.0 + u.modulus().hypot(v.modulus())) {
            return Ok((u, v));
        }
    }
    Err(DynError::NoConvergence(NEWTON_CAP))
}

/// Newton refinement of a real periodic point from `seed`.
pub fn newton_fixed_point(seed: ChartPoint, lp: &LoopParam<f64>, period: usize) -> Result<ChartPoint> {
    let (u, v) = newton((seed.u, seed.v), lp, period, None)?;
    Ok(ChartPoint::new(u, v))
}

fn report(x: ChartPoint, lp: &LoopParam<f64>, period: usize) -> Result<FixedPointReport> {
    let ((fu, fv), jac) = power_with_jacobian(&x.u, &x.v, lp, period)?;
    let jc = jac.map(|row| row.map(|e| Complex64::new(e, 0.0)));
    let eigs = eig2(jc);
    Ok(FixedPointReport {
        location: x,
        period,
        jacobian_eigs: eigs,
        class: classify(&eigs),
        residual: (fu - x.u).hypot(fv - x.v),
    })
}

fn dedup_sorted(mut pts: Vec<ChartPoint>) -> Vec<ChartPoint> {
    let mut out: Vec<ChartPoint> = Vec::new();
    pts.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.v.total_cmp(&b.v)));
    for p in pts {
        if out.iter().all(|q| q.dist(&p) > DEDUP) {
            out.push(p);
        }
    }
    out
}

/// `det(J^period − I)`, which vanishes at multiple roots.
fn newton_det(x: &ChartPoint, lp: &LoopParam<f64>, period: usize) -> Result<f64> {
    let (_, j) = power_with_jacobian(&x.u, &x.v, lp, period)?;
    Ok((j[0][0] - 1.0) * (j[1][1] - 1.0) - j[0][1] * j[1][0])
}

/// Newton only reaches a multiple root to about the cube root of machine
/// precision, from many directions; such hits are grouped and averaged.
fn merge_clusters(pts: Vec<ChartPoint>) -> Vec<ChartPoint> {
    let mut clusters: Vec<Vec<ChartPoint>> = Vec::new();
    for p in pts {
        match clusters.iter_mut().find(|c| c.iter().any(|q| q.dist(&p) < CLUSTER)) {
            Some(c) => c.push(p),
            None => clusters.push(vec![p]),
        }
    }
    clusters
        .into_iter()
        .map(|c| {
            let n = c.len() as f64;
            ChartPoint::new(
                c.iter().map(|p| p.u).sum::<f64>() / n,
                c.iter().map(|p| p.v).sum::<f64>() / n,
            )
        })
        .collect()
}

/// All real solutions of `F^period(x) = x` reachable by Newton from the grid,
/// deduplicated, sorted by `(u, v)` and classified. For `period = 2` the
/// genuine fixed points are dropped.
pub fn fixed_points(lp: &LoopParam<f64>, period: usize, search: SearchBox) -> Vec<FixedPointReport> {
    let found: Vec<ChartPoint> = search
        .points()
        .into_par_iter()
        .filter_map(|s| newton_fixed_point(s, lp, period).ok())
        .filter(|x| x.u.abs() <= DIVERGED && x.v.abs() <= DIVERGED)
        .collect();
    let (degenerate, simple): (Vec<ChartPoint>, Vec<ChartPoint>) = found
        .into_iter()
        .partition(|x| newton_det(x, lp, period).map_or(true, |d| d.abs() < DEGENERATE));
    let mut all = simple;
    all.extend(merge_clusters(degenerate));
    dedup_sorted(all)
        .into_iter()
        .filter(|x| period == 1 || chart_map(x, lp).map(|y| y.dist(x) > DEDUP).unwrap_or(false))
        .filter_map(|x| report(x, lp, period).ok())
        .filter(|r| r.residual <= 1e-10)
        .collect()
}

/// Fixed points of `F` with non-real chart coordinates, from a coarse complex
/// seed grid on `[-2, 2]` in all four real directions.
pub fn complex_fixed_points(lp: &LoopParam<Complex64>) -> Vec<(Complex64, Complex64)> {
    let ax: Vec<f64> = (0..=8).map(|i| -2.0 + 0.5 * i as f64).collect();
    let mut seeds = Vec::new();
    for &a in &ax {
        for &b in &ax {
            for &c in &ax {
                for &e in &ax {
                    if b != 0.0 || e != 0.0 {
                        seeds.push((Complex64::new(a, b), Complex64::new(c, e)));
                    }
                }
            }
        }
    }
    let found: Vec<(Complex64, Complex64)> = seeds
        .into_par_iter()
        .filter_map(|s| newton(s, lp, 1, None).ok())
        .filter(|(u, v)| u.im.abs() > 1e-8 || v.im.abs() > 1e-8)
        .collect();
    let mut out: Vec<(Complex64, Complex64)> = Vec::new();
    for p in found {
        if out.iter().all(|q| (q.0 - p.0).norm().hypot((q.1 - p.1).norm()) > DEDUP) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then(a.0.im.total_cmp(&b.0.im))
            .then(a.1.re.total_cmp(&b.1.re))
            .then(a.1.im.total_cmp(&b.1.im))
    });
    out
}

/// Successive preimages `Y_1, Y_2, …` with `F(Y_{i+1}) = Y_i`, `Y_0 = target`.
/// Each Newton solve starts from `near`, then from the previous preimage.
pub fn back_iterate(
    target: ChartPoint,
    near: ChartPoint,
    lp: &LoopParam<f64>,
    steps: usize,
) -> Result<Vec<ChartPoint>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = target;
    let mut seed = near;
    for _ in 0..steps {
        let (u, v) = newton((seed.u, seed.v), lp, 1, Some(&(cur.u, cur.v)))?;
        let y = ChartPoint::new(u, v);
        let fy = chart_map(&y, lp)?;
        if fy.dist(&cur) > 1e-10 * (1.0 + cur.u.hypot(cur.v)) {
            return Err(DynError::NoConvergence(NEWTON_CAP));
        }
        out.push(y);
        cur = y;
        seed = y;
    }
    Ok(out)
}

const SADDLE_SEED: (f64, f64) = (-0.06, 0.40);

/// Smallest real part among the multipliers of the saddle fixed point near
/// `(−0.06, 0.40)`, shifted by one. It changes sign where that multiplier
/// passes through −1, which is where the attracting 2-cycle collapses onto
/// the fixed point.
pub fn saddle_multiplier(d: f64) -> Result<f64> {
    let lp = LoopParam::new(d);
    let x = newton_fixed_point(ChartPoint::new(SADDLE_SEED.0, SADDLE_SEED.1), &lp, 1)?;
    let j = jacobian(&x, &lp)?;
    let eigs = eig2(j.map(|row| row.map(|e| Complex64::new(e, 0.0))));
    Ok(eigs[0].re.min(eigs[1].re) + 1.0)
}

/// Bisection for the coalescence parameter in `[d_min, d_max]`.
pub fn coalescence_scan(d_min: f64, d_max: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (d_min, d_max);
    let mut flo = saddle_multiplier(lo)?;
    let fhi = saddle_multiplier(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(DynError::NotBracketed { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = saddle_multiplier(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `c_n = reference / vacuum_n`, where `vacuum_n = ⟨T_{X_n}Ω, Ω⟩` along an
/// orbit and `reference` is the vacuum form of the limit point.
pub fn rescale_constants(reference: Complex64, vacuum_values: &[Complex64]) -> Result<Vec<Complex64>> {
    vacuum_values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if v.norm() <= q4core::FLOAT_ZERO {
                Err(DynError::DivisionByZero(n))
            } else {
                Ok(reference / v)
            }
        })
        .collect()
}
