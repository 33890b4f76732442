use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::diagram::{Point, TLDiagram};
use crate::element::TLElement;
use crate::error::{Result, TlError};

type C = Complex64;
type Mat = DMatrix<C>;

/// Spin-½ representation with `δ = u + u⁻¹`: every arc joining two points
/// `i < j` on the same side carries `v[2σᵢ + σⱼ]` with `v = (0, √u, 1/√u, 0)`,
/// and through-strands carry `δ(σ, τ)`. Bottom points index columns, top
/// points index rows; the first point is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinRep {
    pub u: C,
    pub v: [C; 4],
}

impl SpinRep {
    pub fn new(u: C) -> Self {
        let s = u.sqrt();
        Self {
            u,
            v: [C::new(0.0, 0.0), s, 1.0 / s, C::new(0.0, 0.0)],
        }
    }

    /// The root `u` of `u + 1/u = δ`: on the unit circle for `|δ| ≤ 2`, real
    /// and above 1 otherwise.
    pub fn from_delta(delta: f64) -> Result<Self> {
        if delta == 0.0 {
            return Err(TlError::Domain("delta must be nonzero"));
        }
        let u = if delta.abs() <= 2.0 {
            C::from_polar(1.0, (delta / 2.0).acos())
        } else {
            let r = delta / 2.0 + (delta * delta / 4.0 - 1.0).sqrt() * delta.signum();
            C::new(r, 0.0)
        };
        Ok(Self::new(u))
    }

    pub fn delta(&self) -> C {
        self.u + 1.0 / self.u
    }

    pub fn diagram(&self, d: &TLDiagram) -> Mat {
        let (b, t) = (d.bottom(), d.top());
        let bit = |x: usize, n: usize, i: usize| (x >> (n - 1 - i)) & 1;
        let arcs: Vec<(Point, Point)> = d.arcs().collect();
        Mat::from_fn(1 << t, 1 << b, |row, col| {
            let spin = |p: Point| match p {
                Point::Bottom(i) => bit(col, b, i),
                Point::Top(j) => bit(row, t, j),
            };
            let mut w = C::new(1.0, 0.0);
            for &(p, q) in &arcs {
                let (sp, sq) = (spin(p), spin(q));
                let f = match (p, q) {
                    (Point::Bottom(_), Point::Top(_)) | (Point::Top(_), Point::Bottom(_)) => {
                        if sp == sq {
                            C::new(1.0, 0.0)
                        } else {
                            C::new(0.0, 0.0)
                        }
                    }
                    _ => self.v[2 * sp + sq],
                };
                w *= f;
                if w == C::new(0.0, 0.0) {
                    break;
                }
            }
            w
        })
    }
}

/// Matrix of `x` on `(ℂ²)^{⊗n}`.
pub fn tl_rep(x: &TLElement, u: C) -> Result<Mat> {
    let rep = SpinRep::new(u);
    if (rep.delta() - C::new(x.delta(), 0.0)).norm() > 1e-12 * (1.0 + x.delta().abs()) {
        return Err(TlError::ParameterMismatch {
            element: x.delta(),
            rep: rep.delta().re,
        });
    }
    let mut m = Mat::zeros(1 << x.top(), 1 << x.bottom());
    for (d, c) in x.terms() {
        m += rep.diagram(d) * *c;
    }
    Ok(m)
}
