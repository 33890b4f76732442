use nalgebra::DMatrix;
use num_complex::Complex64;
use planar::{max_abs, SiteModel};

use crate::diagram::{Point, TLDiagram};
use crate::element::{jw2, TLElement};
use crate::error::{Result, TlError};
use crate::rep::{tl_rep, SpinRep};

type C = Complex64;
type Mat = DMatrix<C>;

/// Rank threshold for compressed spaces.
pub const RANK_TOL: f64 = 1e-9;

/// Doubled strands reduced by `p₂ ⊗ … ⊗ p₂`: the site space is the
/// three-dimensional image of `p₂` on `ℂ² ⊗ ℂ²`.
#[derive(Debug, Clone)]
pub struct Cable {
    pub delta: f64,
    pub rep: SpinRep,
    /// Orthonormal basis of the image of `p₂` (4 × 3).
    pub iota: Mat,
    /// `ι† p₂` (3 × 4); `pi · iota = 1`.
    pub pi: Mat,
    pub model: SiteModel,
}

fn kron_all(m: &Mat, k: usize) -> Mat {
    let mut out = Mat::identity(1, 1);
    for _ in 0..k {
        out = out.kronecker(m);
    }
    out
}

fn rank(m: &Mat, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|s| **s > tol * top.max(1.0)).count()
}

impl Cable {
    pub fn new(delta: f64) -> Result<Self> {
        let rep = SpinRep::from_delta(delta)?;
        let p2 = tl_rep(&jw2(delta)?, rep.u)?;
        let svd = p2.clone().svd(true, false);
        let u = svd.u.ok_or(TlError::Domain("svd failed"))?;
        // Singular values come sorted; the image of p₂ is three-dimensional.
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|a, b| svd.singular_values[*b].total_cmp(&svd.singular_values[*a]));
        let iota = Mat::from_fn(4, 3, |i, j| u[(i, order[j])]);
        let pi = iota.adjoint() * &p2;

        let compress_out = |k: usize| kron_all(&pi, k);
        let compress_in = |k: usize| kron_all(&iota, k);
        let y_tl = rep.diagram(&vertex_diagram());
        let ys_tl = rep.diagram(&covertex_diagram());
        let mut y = compress_out(2) * y_tl * &iota;
        let mut ys = &pi * ys_tl * compress_in(2);
        let theta = (&ys * &y)[(0, 0)];
        if theta.norm() < RANK_TOL {
            return Err(TlError::DegenerateVertex(theta.norm()));
        }
        let root = theta.sqrt();
        y /= root;
        ys /= root;
        let cup_v = compress_out(2) * rep.diagram(&cable_cup());
        let cap_v = rep.diagram(&cable_cap()) * compress_in(2);
        let cup = Mat::from_fn(3, 3, |i, j| cup_v[(3 * i + j, 0)]);
        let cap = Mat::from_fn(3, 3, |i, j| cap_v[(0, 3 * i + j)]);
        let model = SiteModel::new(cup, cap, y, ys)?;
        Ok(Self {
            delta,
            rep,
            iota,
            pi,
            model,
        })
    }

    /// Loop value of the cabled theory, `δ² − 1`.
    pub fn loop_value(&self) -> C {
        self.model.loop_value()
    }

    /// `(p₂^{⊗t}) rep(D) (ι^{⊗b})` for a diagram on doubled strands.
    pub fn compress(&self, d: &TLDiagram) -> Result<Mat> {
        if d.bottom() % 2 == 1 || d.top() % 2 == 1 {
            return Err(TlError::Matching(
                "cabled diagrams need an even number of points".into(),
            ));
        }
        Ok(kron_all(&self.pi, d.top() / 2) * self.rep.diagram(d) * kron_all(&self.iota, d.bottom() / 2))
    }

    /// Dimension of the span of all compressed diagrams from one cable to
    /// two.
    pub fn three_box_dimension(&self) -> Result<usize> {
        let ds = TLDiagram::enumerate(2, 4);
        let cols: Vec<Mat> = ds.iter().map(|d| self.compress(d)).collect::<Result<_>>()?;
        let len = cols[0].len();
        let stacked = Mat::from_fn(len, cols.len(), |i, j| cols[j].as_slice()[i]);
        Ok(rank(&stacked, RANK_TOL))
    }

    /// `max |ρ(Y) − Y|` for the one-click rotation of the vertex,
    /// `ρ(Y)[(p, q), a] = Σ cup[p, x] · Y[(q, c), x] · cap[c, a]`.
    pub fn vertex_cyclic_residual(&self) -> f64 {
        planar::max_diff(&self.model.rotate_vertex(), self.model.y())
    }
}

/// Cable `x1` runs to `y1`, `x2` to `y4`, and `y2, y3` are joined by a cup.
pub fn vertex_diagram() -> TLDiagram {
    use Point::*;
    TLDiagram::from_pairs(2, 4, &[(Bottom(0), Top(0)), (Bottom(1), Top(3)), (Top(1), Top(2))]).expect("planar")
}

/// The vertical reflection of [`vertex_diagram`].
pub fn covertex_diagram() -> TLDiagram {
    use Point::*;
    TLDiagram::from_pairs(
        4,
        2,
        &[(Top(0), Bottom(0)), (Top(1), Bottom(3)), (Bottom(1), Bottom(2))],
    )
    .expect("planar")
}

/// The doubled cup on four top points.
pub fn cable_cup() -> TLDiagram {
    use Point::*;
    TLDiagram::from_pairs(0, 4, &[(Top(1), Top(2)), (Top(0), Top(3))]).expect("planar")
}

pub fn cable_cap() -> TLDiagram {
    use Point::*;
    TLDiagram::from_pairs(4, 0, &[(Bottom(1), Bottom(2)), (Bottom(0), Bottom(3))]).expect("planar")
}

/// Rank of the span of the spin representations of all `n`-strand
/// diagrams.
pub fn tl_rank(n: usize, delta: f64) -> Result<(usize, usize)> {
    let rep = SpinRep::from_delta(delta)?;
    let ds = TLDiagram::enumerate(n, n);
    let mats: Vec<Mat> = ds.iter().map(|d| rep.diagram(d)).collect();
    let len = mats[0].len();
    let stacked = Mat::from_fn(len, mats.len(), |i, j| mats[j].as_slice()[i]);
    Ok((rank(&stacked, RANK_TOL), ds.len()))
}

/// `max |rep(xy) − rep(x)rep(y)|` over all pairs of `n`-strand diagrams.
pub fn homomorphism_residual(n: usize, delta: f64) -> Result<f64> {
    let rep = SpinRep::from_delta(delta)?;
    let ds = TLDiagram::enumerate(n, n);
    let mut worst: f64 = 0.0;
    for a in &ds {
        for b in &ds {
            let prod = crate::element::tl_compose(
                &TLElement::diagram(a.clone(), delta),
                &TLElement::diagram(b.clone(), delta),
            )?;
            let lhs = tl_rep(&prod, rep.u)?;
            worst = worst.max(max_abs(&(lhs - rep.diagram(a) * rep.diagram(b))));
        }
    }
    Ok(worst)
}
