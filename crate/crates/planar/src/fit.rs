use itertools::Itertools;
use q4core::{alpha, renorm_r, IehVec, LoopParam, Q4Vec};

use crate::{Mat, PlanarError, Result, SiteModel, C};

/// Candidate operators for the `b`-basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DictEntry {
    Id,
    CupCap,
    TwoVertex,
    RotatedTwoVertex,
}

impl DictEntry {
    pub const ALL: [DictEntry; 4] = [Self::Id, Self::CupCap, Self::TwoVertex, Self::RotatedTwoVertex];

    fn coords(self, m: &SiteModel) -> IehVec<C> {
        let one = C::new(1.0, 0.0);
        let zero = C::new(0.0, 0.0);
        match self {
            Self::Id => IehVec::new(one, zero, zero),
            Self::CupCap => IehVec::new(zero, one, zero),
            Self::TwoVertex => IehVec::new(zero, zero, one),
            Self::RotatedTwoVertex => m.coords(&m.rot(&m.two_vertex())).0,
        }
    }
}

/// `b_i = scales[i] · names[i]`, with the worst residual over all constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisFit {
    pub names: [DictEntry; 3],
    pub scales: [C; 3],
    pub residual: f64,
}

impl BasisFit {
    pub fn ops(&self, m: &SiteModel) -> [Mat; 3] {
        [0, 1, 2].map(|i| m.ieh_op(&self.names[i].coords(m)) * self.scales[i])
    }
}

fn sample_points() -> Vec<Q4Vec<C>> {
    let c = |x: f64| C::new(x, 0.0);
    [
        (0.3, 1.1, -0.4),
        (-0.7, 0.8, 0.5),
        (1.3, -0.6, 0.35),
        (0.45, 0.9, 1.7),
        (-1.2, 0.35, -0.8),
    ]
    .iter()
    .map(|&(p, q, r)| Q4Vec::new(c(p), c(q), c(r)))
    .collect()
}

/// Residuals of the renormalisation and `α` constraints for one candidate,
/// as real and imaginary parts of every entry. `g[i][j] = D_i ! D_j`.
fn constraint_residuals(
    m: &SiteModel,
    dict: &[Mat; 3],
    g: &[[Mat; 3]; 3],
    scales: [f64; 3],
    lp: &LoopParam<C>,
    braid: Option<&Mat>,
) -> Option<Vec<f64>> {
    let sc = scales.map(|x| C::new(x, 0.0));
    let ops: [Mat; 3] = [0, 1, 2].map(|i| &dict[i] * sc[i]);
    let conc = |x: &Q4Vec<C>| &ops[0] * x.p + &ops[1] * x.q + &ops[2] * x.r;
    let mut out = Vec::new();
    let mut push = |a: &Mat, b: &Mat| {
        for (u, v) in a.iter().zip(b.iter()) {
            let z = u - v;
            out.push(z.re);
            out.push(z.im);
        }
    };
    for x in sample_points() {
        let xs = [x.p * sc[0], x.q * sc[1], x.r * sc[2]];
        let mut xx = Mat::zeros(ops[0].nrows(), ops[0].ncols());
        for i in 0..3 {
            for j in 0..3 {
                xx += &g[i][j] * (xs[i] * xs[j]);
            }
        }
        push(&xx, &conc(&renorm_r(&x, lp).ok()?));
        let inv = conc(&x).try_inverse()?;
        push(&m.rot(&inv), &conc(&alpha(&x, lp).ok()?));
    }
    if let Some(p) = braid {
        let t = &ops[0] * C::new(-2.0, 0.0) + &ops[1];
        let lam =
            p.iter().zip(t.iter()).map(|(a, b)| a.conj() * b).sum::<C>() / p.iter().map(|a| a.norm_sqr()).sum::<f64>();
        push(&t, &(p * lam));
    }
    Some(out)
}

fn worst(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Finds `b1, b2, b3` among scaled dictionary operators such that the
/// concrete `X!X` and `𝓕(X⁻¹)` reproduce [`renorm_r`] and [`alpha`] on
/// sample points, and (if `braid` is given) `−2b1 + b2` is proportional to
/// it. Real scales are found by Gauss–Newton from all sign patterns; the fit
/// with the smallest residual wins, ties broken by dictionary order.
pub fn solve_b_basis(m: &SiteModel, braid: Option<&Mat>, tolerance: f64) -> Result<BasisFit> {
    let lp = LoopParam::new(m.loop_value());
    let mut best: Option<BasisFit> = None;
    let mut best_any = f64::INFINITY;
    for names in DictEntry::ALL.iter().copied().permutations(3) {
        let names: [DictEntry; 3] = [names[0], names[1], names[2]];
        let dict: [Mat; 3] = names.map(|n| m.ieh_op(&n.coords(m)));
        let g: [[Mat; 3]; 3] = [0, 1, 2].map(|i| [0, 1, 2].map(|j| m.bang(&dict[i], &dict[j])));
        let f = |s: [f64; 3]| constraint_residuals(m, &dict, &g, s, &lp, braid);
        for bits in 0..8 {
            let start = [sgn(bits, 0), sgn(bits, 1), sgn(bits, 2)];
            let Some((s, r)) = gauss_newton(start, &f) else {
                continue;
            };
            best_any = best_any.min(r);
            if r <= tolerance && best.as_ref().is_none_or(|b| r < 0.5 * b.residual) {
                best = Some(BasisFit {
                    names,
                    scales: s.map(|x| C::new(x, 0.0)),
                    residual: r,
                });
            }
        }
    }
    best.ok_or(PlanarError::Fit {
        residual: best_any,
        tolerance,
    })
}

fn sgn(bits: u32, i: u32) -> f64 {
    if bits >> i & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn gauss_newton(mut s: [f64; 3], f: &impl Fn([f64; 3]) -> Option<Vec<f64>>) -> Option<([f64; 3], f64)> {
    let mut r = f(s)?;
    for _ in 0..50 {
        if worst(&r) < 1e-14 {
            break;
        }
        let h = 1e-7;
        let mut cols = Vec::with_capacity(3);
        for i in 0..3 {
            let mut t = s;
            t[i] += h;
            let rt = f(t)?;
            cols.push(rt.iter().zip(&r).map(|(a, b)| (a - b) / h).collect::<Vec<_>>());
        }
        let jtj = nalgebra::Matrix3::from_fn(|i, j| cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum::<f64>());
        let jtr = nalgebra::Vector3::from_fn(|i, _| cols[i].iter().zip(&r).map(|(a, b)| a * b).sum::<f64>());
        let step = jtj.lu().solve(&(-jtr))?;
        if !step.iter().all(|x| x.is_finite()) {
            return None;
        }
        for i in 0..3 {
            s[i] += step[i];
        }
        r = f(s)?;
        if step.norm() < 1e-15 {
            break;
        }
    }
    Some((s, worst(&r)))
}
