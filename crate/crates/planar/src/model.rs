use nalgebra::Matrix3;
use q4core::{IehVec, Q4Vec, RotationOracle};

use crate::{pow, Mat, PlanarError, Result, Vector, C};

/// Site space with cup, cap and trivalent vertex.
///
/// `cup[(i, j)]` is the vector `∪ ∈ h ⊗ h`, `cap[(i, j)]` the covector
/// `∩: h ⊗ h → ℂ`; `y` maps `h → h ⊗ h` (`n² × n`) and `ys` is its partner
/// `h ⊗ h → h` with `ys · y = 1`.
#[derive(Debug, Clone)]
pub struct SiteModel {
    n: usize,
    cup: Mat,
    cap: Mat,
    cup_inv: Mat,
    cap_inv: Mat,
    y: Mat,
    ys: Mat,
    d: C,
    basis: [Mat; 3],
}

impl SiteModel {
    pub fn new(cup: Mat, cap: Mat, y: Mat, ys: Mat) -> Result<Self> {
        let n = cup.nrows();
        let nn = n * n;
        if cup.shape() != (n, n) || cap.shape() != (n, n) || y.shape() != (nn, n) || ys.shape() != (n, nn) {
            return Err(PlanarError::Shape(format!(
                "cup {:?}, cap {:?}, y {:?}, ys {:?}",
                cup.shape(),
                cap.shape(),
                y.shape(),
                ys.shape()
            )));
        }
        let d = cup.component_mul(&cap).sum();
        let cup_inv = cup.clone().try_inverse().ok_or(PlanarError::Singular)?;
        let cap_inv = cap.clone().try_inverse().ok_or(PlanarError::Singular)?;
        let mut m = Self {
            n,
            cup,
            cap,
            cup_inv,
            cap_inv,
            y,
            ys,
            d,
            basis: [Mat::zeros(nn, nn), Mat::zeros(nn, nn), Mat::zeros(nn, nn)],
        };
        m.basis = [m.two_vertex(), m.identity(), m.cupcap()];
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of `k` sites.
    pub fn dim(&self, k: usize) -> usize {
        pow(self.n, k)
    }

    /// Loop value `∩ ∘ ∪`.
    pub fn loop_value(&self) -> C {
        self.d
    }

    pub fn y(&self) -> &Mat {
        &self.y
    }

    pub fn ys(&self) -> &Mat {
        &self.ys
    }

    pub fn cup(&self) -> &Mat {
        &self.cup
    }

    pub fn cap(&self) -> &Mat {
        &self.cap
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.n * self.n, self.n * self.n)
    }

    /// `E = ∪ ∘ ∩`.
    pub fn cupcap(&self) -> Mat {
        let nn = self.n * self.n;
        let k = Vector::from_iterator(nn, self.cup.transpose().iter().copied());
        let l = Vector::from_iterator(nn, self.cap.transpose().iter().copied());
        &k * l.transpose()
    }

    /// `H = Y ∘ Y*`.
    pub fn two_vertex(&self) -> Mat {
        &self.y * &self.ys
    }

    /// The operators representing `b1, b2, b3`.
    pub fn b_ops(&self) -> &[Mat; 3] {
        &self.basis
    }

    pub fn set_b_ops(&mut self, basis: [Mat; 3]) {
        self.basis = basis;
    }

    /// `p·b1 + q·b2 + r·b3`.
    pub fn op(&self, x: &Q4Vec<C>) -> Mat {
        &self.basis[0] * x.p + &self.basis[1] * x.q + &self.basis[2] * x.r
    }

    /// `x·1 + y·E + z·H`.
    pub fn ieh_op(&self, x: &IehVec<C>) -> Mat {
        self.identity() * x.x + self.cupcap() * x.y + self.two_vertex() * x.z
    }

    /// Quarter turn of a 4-box:
    /// `out[(d, y), (x, a)] = Σ cap[x, c] · X[(c, d), (a, b)] · cup[b, y]`.
    pub fn rot(&self, x: &Mat) -> Mat {
        let n = self.n;
        let nn = n * n;
        // First contract the cup: t[(c, d), a, y] = Σ_b X[(c,d),(a,b)] cup[b, y].
        let mut t = vec![C::new(0.0, 0.0); nn * nn];
        for cd in 0..nn {
            for a in 0..n {
                for yy in 0..n {
                    let mut s = C::new(0.0, 0.0);
                    for b in 0..n {
                        s += x[(cd, a * n + b)] * self.cup[(b, yy)];
                    }
                    t[(cd * n + a) * n + yy] = s;
                }
            }
        }
        let mut out = Mat::zeros(nn, nn);
        for xx in 0..n {
            for d in 0..n {
                for a in 0..n {
                    for yy in 0..n {
                        let mut s = C::new(0.0, 0.0);
                        for c in 0..n {
                            s += self.cap[(xx, c)] * t[((c * n + d) * n + a) * n + yy];
                        }
                        out[(d * n + yy, xx * n + a)] = s;
                    }
                }
            }
        }
        out
    }

    /// Exact inverse of [`Self::rot`]:
    /// `X[(c, d), (a, b)] = Σ cap⁻¹[c, x] · out[(d, y), (x, a)] · cup⁻¹[y, b]`.
    /// Agrees with `rot³` on the 4-box span.
    pub fn rot_inv(&self, x: &Mat) -> Mat {
        let n = self.n;
        let nn = n * n;
        let mut t = vec![C::new(0.0, 0.0); nn * nn];
        // t[(d, y), c, a] = Σ_x cap⁻¹[c, x] out[(d, y), (x, a)]
        for dy in 0..nn {
            for c in 0..n {
                for a in 0..n {
                    let mut s = C::new(0.0, 0.0);
                    for xx in 0..n {
                        s += self.cap_inv[(c, xx)] * x[(dy, xx * n + a)];
                    }
                    t[(dy * n + c) * n + a] = s;
                }
            }
        }
        let mut out = Mat::zeros(nn, nn);
        for c in 0..n {
            for d in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let mut s = C::new(0.0, 0.0);
                        for yy in 0..n {
                            s += t[((d * n + yy) * n + c) * n + a] * self.cup_inv[(yy, b)];
                        }
                        out[(c * n + d, a * n + b)] = s;
                    }
                }
            }
        }
        out
    }

    /// One-click rotation of the vertex: the input becomes the left output,
    /// the left output the right one and the right output the input,
    /// `ρ(Y)[(p, q), a] = Σ cup[p, x] · Y[(q, c), x] · cap[c, a]`.
    pub fn rotate_vertex(&self) -> Mat {
        let n = self.n;
        Mat::from_fn(n * n, n, |pq, a| {
            let (p, q) = (pq / n, pq % n);
            let mut s = C::new(0.0, 0.0);
            for x in 0..n {
                for c in 0..n {
                    s += self.cup[(p, x)] * self.y[(q * n + c, x)] * self.cap[(c, a)];
                }
            }
            s
        })
    }

    /// Horizontal ("comultiplication") product, conjugate to composition:
    /// `𝓕(AB) = 𝓕(A).𝓕(B)`.
    pub fn comultiply(&self, a: &Mat, b: &Mat) -> Mat {
        self.rot(&(self.rot_inv(a) * self.rot_inv(b)))
    }

    /// The rotated view `[N, E, W, S]` of a 4-box, flattened row-major.
    pub fn top(&self, x: &Mat) -> Vec<C> {
        let r = self.rot(x);
        let nn = self.n * self.n;
        let mut out = Vec::with_capacity(nn * nn);
        for row in 0..nn {
            for col in 0..nn {
                out.push(r[(row, col)]);
            }
        }
        out
    }

    /// `Z[n, o, E, W, S] = Σ Y[(a, b), S] · At[n, m, W, a] · Bt[o, E, m, b]`:
    /// `A` and `B` side by side, their bottoms fed by one `Y`.
    fn pair_on_y(&self, at: &[C], bt: &[C]) -> Vec<C> {
        let n = self.n;
        let idx4 = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
        // z1[n, m, W, b, S] = Σ_a At[n, m, W, a] Y[(a, b), S]
        let mut z1 = vec![C::new(0.0, 0.0); pow(n, 5)];
        for nn_ in 0..n {
            for m in 0..n {
                for w in 0..n {
                    for b in 0..n {
                        for s in 0..n {
                            let mut acc = C::new(0.0, 0.0);
                            for a in 0..n {
                                acc += at[idx4(nn_, m, w, a)] * self.y[(a * n + b, s)];
                            }
                            z1[(((nn_ * n + m) * n + w) * n + b) * n + s] = acc;
                        }
                    }
                }
            }
        }
        let mut z2 = vec![C::new(0.0, 0.0); pow(n, 5)];
        for nn_ in 0..n {
            for o in 0..n {
                for e in 0..n {
                    for w in 0..n {
                        for s in 0..n {
                            let mut acc = C::new(0.0, 0.0);
                            for m in 0..n {
                                for b in 0..n {
                                    acc += z1[(((nn_ * n + m) * n + w) * n + b) * n + s] * bt[idx4(o, e, m, b)];
                                }
                            }
                            z2[(((nn_ * n + o) * n + e) * n + w) * n + s] = acc;
                        }
                    }
                }
            }
        }
        z2
    }

    /// The renormalisation product `x!y`: `x` and `y` side by side, bottoms
    /// split from one strand by `Y`, tops merged by `Y*`.
    pub fn bang(&self, x: &Mat, y: &Mat) -> Mat {
        let n = self.n;
        let z2 = self.pair_on_y(&self.top(x), &self.top(y));
        let nn = n * n;
        let mut r = Mat::zeros(nn, nn);
        for big_n in 0..n {
            for e in 0..n {
                for w in 0..n {
                    for s in 0..n {
                        let mut acc = C::new(0.0, 0.0);
                        for a in 0..n {
                            for o in 0..n {
                                acc += self.ys[(big_n, a * n + o)] * z2[(((a * n + o) * n + e) * n + w) * n + s];
                            }
                        }
                        r[(big_n * n + e, w * n + s)] = acc;
                    }
                }
            }
        }
        self.rot_inv(&r)
    }

    /// Largest entry of `(A ⊠ B) ∘ Y − Y ∘ C` as a 5-leg tensor.
    pub fn abc_residual(&self, a: &Mat, b: &Mat, c: &Mat) -> f64 {
        let n = self.n;
        let lhs = self.pair_on_y(&self.top(a), &self.top(b));
        let ct = self.top(c);
        let mut worst: f64 = 0.0;
        for a_ in 0..n {
            for o in 0..n {
                for e in 0..n {
                    for w in 0..n {
                        for s in 0..n {
                            let mut rhs = C::new(0.0, 0.0);
                            for big_n in 0..n {
                                rhs += ct[((big_n * n + e) * n + w) * n + s] * self.y[(a_ * n + o, big_n)];
                            }
                            let l = lhs[(((a_ * n + o) * n + e) * n + w) * n + s];
                            worst = worst.max((l - rhs).norm());
                        }
                    }
                }
            }
        }
        worst
    }

    fn fit(&self, x: &Mat, basis: [&Mat; 3]) -> ([C; 3], f64) {
        let ip = |a: &Mat, b: &Mat| a.iter().zip(b.iter()).map(|(u, v)| u.conj() * v).sum::<C>();
        let g = Matrix3::from_fn(|i, j| ip(basis[i], basis[j]));
        let rhs = nalgebra::Vector3::from_fn(|i, _| ip(basis[i], x));
        let c = g.lu().solve(&rhs).unwrap_or_else(nalgebra::Vector3::zeros);
        let fitted = basis[0] * c[0] + basis[1] * c[1] + basis[2] * c[2];
        (([c[0], c[1], c[2]]), crate::max_diff(&fitted, x))
    }

    /// Least-squares coordinates in `{1, E, H}` and the fit residual.
    pub fn coords(&self, x: &Mat) -> (IehVec<C>, f64) {
        let (i, e, h) = (self.identity(), self.cupcap(), self.two_vertex());
        let (c, r) = self.fit(x, [&i, &e, &h]);
        (IehVec::new(c[0], c[1], c[2]), r)
    }

    /// Least-squares coordinates in the current `b`-basis.
    pub fn coords_b(&self, x: &Mat) -> (Q4Vec<C>, f64) {
        let [b1, b2, b3] = &self.basis;
        let (c, r) = self.fit(x, [b1, b2, b3]);
        (Q4Vec::new(c[0], c[1], c[2]), r)
    }

    /// `Y^{⊗k}: h^{⊗k} → h^{⊗2k}`, doubling every site in place.
    pub fn iota(&self, k: usize) -> Mat {
        kron_power(&self.y, k)
    }

    /// `(Y*)^{⊗k}`.
    pub fn iota_adj(&self, k: usize) -> Mat {
        kron_power(&self.ys, k)
    }

    /// Applies a two-site operator `h` to sites `(i, j)` of a `k`-site vector
    /// (`h`'s first tensor leg on site `i`).
    pub fn apply_two_site(&self, h: &Mat, i: usize, j: usize, k: usize, x: &Vector) -> Vector {
        let n = self.n;
        let dim = self.dim(k);
        let si = pow(n, k - 1 - i);
        let sj = pow(n, k - 1 - j);
        let mut out = Vector::zeros(dim);
        for idx in 0..dim {
            let xi = x[idx];
            if xi == C::new(0.0, 0.0) {
                continue;
            }
            let a = (idx / si) % n;
            let b = (idx / sj) % n;
            let base = idx - a * si - b * sj;
            for c in 0..n {
                for d in 0..n {
                    let hv = h[(c * n + d, a * n + b)];
                    if hv != C::new(0.0, 0.0) {
                        out[base + c * si + d * sj] += hv * xi;
                    }
                }
            }
        }
        out
    }

    /// `𝔥_h x = Σ_i h_{i, i+1} x` with periodic wrap.
    pub fn hamiltonian_apply(&self, h: &Mat, k: usize, x: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim(k));
        for i in 0..k {
            out += self.apply_two_site(h, i, (i + 1) % k, k, x);
        }
        out
    }

    pub fn hamiltonian(&self, h: &Mat, k: usize) -> Mat {
        let dim = self.dim(k);
        let mut m = Mat::zeros(dim, dim);
        for col in 0..dim {
            let mut e = Vector::zeros(dim);
            e[col] = C::new(1.0, 0.0);
            m.set_column(col, &self.hamiltonian_apply(h, k, &e));
        }
        m
    }

    /// The scale-invariance map on two-site densities:
    /// `𝓢(h) = (Y*⊗Y*)(1⊗h⊗1)(Y⊗Y) + ((Y* h Y)⊗1 + 1⊗(Y* h Y))/2`.
    pub fn s_map(&self, h: &Mat) -> Mat {
        let n = self.n;
        let i1 = Mat::identity(n, n);
        let one = &self.ys * h * &self.y;
        let mid = i1.kronecker(h).kronecker(&i1);
        let two = self.ys.kronecker(&self.ys) * mid * self.y.kronecker(&self.y);
        two + (one.kronecker(&i1) + i1.kronecker(&one)) * C::new(0.5, 0.0)
    }
}

fn kron_power(m: &Mat, k: usize) -> Mat {
    let mut out = Mat::identity(1, 1);
    for _ in 0..k {
        out = out.kronecker(m);
    }
    out
}

impl RotationOracle for SiteModel {
    fn loop_value(&self) -> C {
        self.d
    }

    fn rotate_fit(&self, x: &IehVec<C>) -> (IehVec<C>, f64) {
        self.coords(&self.rot(&self.ieh_op(x)))
    }
}
