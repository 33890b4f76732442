use q4core::{renorm_r, ChartPoint, LoopParam, Q4Vec, Scalar};
use serde::{Deserialize, Serialize};

use crate::Result;

/// One application of `𝓡` in the chart, over any scalar.
pub fn chart_map_s<S: Scalar>(u: &S, v: &S, lp: &LoopParam<S>) -> Result<(S, S)> {
    let y = renorm_r(&Q4Vec::lift_coords(u.clone(), v.clone()), lp)?;
    Ok(y.chart_coords()?)
}

pub fn chart_map(x: &ChartPoint, lp: &LoopParam<f64>) -> Result<ChartPoint> {
    let (u, v) = chart_map_s(&x.u, &x.v, lp)?;
    Ok(ChartPoint::new(u, v))
}

/// Analytic Jacobian `∂(u', v')/∂(u, v)` by the quotient rule over the
/// homogeneous quadratic at `p = 1`.
pub fn jacobian_s<S: Scalar>(u: &S, v: &S, lp: &LoopParam<S>) -> Result<[[S; 2]; 2]> {
    let y = renorm_r(&Q4Vec::lift_coords(u.clone(), v.clone()), lp)?;
    let f1 = q4core::nonzero(y.p.clone(), "p")?;
    let d = lp.d.clone();
    let dm1 = q4core::nonzero(d.clone() - S::one(), "d - 1")?;
    let two = S::from_i64(2);
    let c2 = two.clone() * (d - two.clone()) / dm1.clone();
    // ∂F/∂q and ∂F/∂r at p = 1, q = u, r = v.
    let g = two.clone() + two.clone() * u.clone();
    let f1_q = g.clone();
    let f1_r = c2 + two * v.clone();
    let f2_q = -g.clone() / dm1.clone();
    let f3_q = g / dm1;
    let f1sq = f1.clone() * f1.clone();
    let du = (f2_q * f1.clone() - y.q.clone() * f1_q.clone()) / f1sq.clone();
    let dv = (-(y.q.clone() * f1_r.clone())) / f1sq.clone();
    let eu = (f3_q * f1.clone() - y.r.clone() * f1_q) / f1sq.clone();
    let ev = (-(y.r.clone() * f1_r)) / f1sq;
    Ok([[du, dv], [eu, ev]])
}

pub fn jacobian(x: &ChartPoint, lp: &LoopParam<f64>) -> Result<[[f64; 2]; 2]> {
    jacobian_s(&x.u, &x.v, lp)
}

/// An orbit in the chart. Iteration stops early (`escaped`) when an image
/// lands on the circle at infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub start: ChartPoint,
    pub points: Vec<ChartPoint>,
    /// `‖𝓡(lift(x_k))‖` for each step taken.
    pub lifted_norms: Vec<f64>,
    pub escaped: bool,
}

pub fn iterate(start: ChartPoint, lp: &LoopParam<f64>, steps: usize) -> OrbitRecord {
    let mut points = vec![start];
    let mut lifted_norms = Vec::with_capacity(steps);
    let mut escaped = false;
    let mut x = start;
    for _ in 0..steps {
        let y = match renorm_r(&q4core::lift(&x), lp) {
            Ok(y) => y,
            Err(_) => {
                escaped = true;
                break;
            }
        };
        lifted_norms.push(y.norm());
        match q4core::chart(&y) {
            Ok(c) if c.u.is_finite() && c.v.is_finite() => {
                x = c;
                points.push(c);
            }
            _ => {
                escaped = true;
                break;
            }
        }
    }
    OrbitRecord {
        start,
        points,
        lifted_norms,
        escaped,
    }
}
