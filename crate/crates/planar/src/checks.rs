use dynsys::{chart_map, iterate, newton_fixed_point, rescale_constants};
use nalgebra::Matrix3;
use q4core::{lift, renorm_r, ChartPoint, LoopParam, Q4Vec};

use crate::states::{random_op, random_state, StateRng};
use crate::{Mat, PlanarError, Result, SiteModel, Transfer, Vector, C};

/// Largest singular value.
pub fn op_norm(m: &Mat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    // The Gram matrix of the thin side keeps the decomposition small.
    let g = if m.nrows() >= m.ncols() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    g.symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |a, x| a.max(*x))
        .max(0.0)
        .sqrt()
}

/// `T_fine ∘ ι` column by column, matrix-free in the fine transfer.
fn fine_after_iota(model: &SiteModel, fine: &Transfer, k: usize) -> Mat {
    let iota = model.iota(k);
    let mut out = Mat::zeros(iota.nrows(), iota.ncols());
    for j in 0..iota.ncols() {
        out.set_column(j, &fine.apply(&iota.column(j).into_owned()));
    }
    out
}

/// `‖T_fine ∘ ι − ι ∘ T_coarse‖ / ‖ι ∘ T_coarse‖` for `k` coarse and `2k`
/// fine sites.
pub fn scale_invariance_residual(model: &SiteModel, coarse: &[Mat], fine: &[Mat]) -> Result<f64> {
    let k = coarse.len();
    if fine.len() != 2 * k {
        return Err(PlanarError::Shape(format!(
            "{} coarse vs {} fine labels",
            k,
            fine.len()
        )));
    }
    let lhs = fine_after_iota(model, &Transfer::new(model, fine), k);
    let rhs = model.iota(k) * Transfer::new(model, coarse).dense();
    Ok(op_norm(&(&lhs - &rhs)) / op_norm(&rhs).max(f64::MIN_POSITIVE))
}

/// `‖ι* ∘ T_{2k}(fine) ∘ ι − T_k(coarse)‖ / ‖T_k(coarse)‖` with uniform labels.
pub fn weak_invariance_residual(model: &SiteModel, coarse: &Mat, fine: &Mat, k: usize) -> f64 {
    let fine_t = Transfer::new(model, &vec![fine.clone(); 2 * k]);
    let coarse_t = Transfer::new(model, &vec![coarse.clone(); k]).dense();
    let lhs = model.iota_adj(k) * fine_after_iota(model, &fine_t, k);
    op_norm(&(&lhs - &coarse_t)) / op_norm(&coarse_t).max(f64::MIN_POSITIVE)
}

/// Rescales a projective fixed point `R(X) = λX` to an exact one.
pub fn exact_fixed_point(x: &Q4Vec<C>, lp: &LoopParam<C>) -> Result<Q4Vec<C>> {
    let rx = renorm_r(x, lp).map_err(|_| PlanarError::Singular)?;
    let lam = rx.ratio_to(x).map_err(|_| PlanarError::Singular)?;
    Ok(x.scale(C::new(1.0, 0.0) / lam))
}

/// Scales `(X1, X2)` with `R(X1) ∝ X2`, `R(X2) ∝ X1` so that both relations
/// become equalities.
pub fn exact_two_cycle(x1: &Q4Vec<C>, x2: &Q4Vec<C>, lp: &LoopParam<C>) -> Result<(Q4Vec<C>, Q4Vec<C>)> {
    let sing = |_| PlanarError::Singular;
    let mu = renorm_r(x1, lp).map_err(sing)?.ratio_to(x2).map_err(sing)?;
    let nu = renorm_r(x2, lp).map_err(sing)?.ratio_to(x1).map_err(sing)?;
    // a³ = 1/(μ²ν), b = a²μ.
    let a = (C::new(1.0, 0.0) / (mu * mu * nu)).powf(1.0 / 3.0);
    let b = a * a * mu;
    Ok((x1.scale(a), x2.scale(b)))
}

/// `max |⟨𝔥_h ιξ, ι†η⟩ − ⟨𝔥_{𝓢(h)} ξ, η⟩|` over `samples` random pairs, with
/// `k` coarse sites and `ι† = (Y*)^{⊗k}`.
pub fn hamiltonian_identity_residual(model: &SiteModel, h: &Mat, k: usize, rng: &mut StateRng, samples: usize) -> f64 {
    let iota = model.iota(k);
    let iota_adj = model.iota_adj(k);
    let sh = model.s_map(h);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let xi = random_state(rng, model.dim(k));
        let eta = random_state(rng, model.dim(k));
        let fine = model.hamiltonian_apply(h, 2 * k, &(&iota * &xi));
        let lhs = eta.dotc(&(&iota_adj * fine));
        let rhs = eta.dotc(&model.hamiltonian_apply(&sh, k, &xi));
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

/// A random two-site density.
pub fn random_density(model: &SiteModel, rng: &mut StateRng) -> Mat {
    random_op(rng, model.dim(2))
}

/// Basis `{𝓕(H), E, 1}` in which the matrix of `𝓢` is reported.
pub fn s_basis(model: &SiteModel) -> [Mat; 3] {
    [model.rot(&model.two_vertex()), model.cupcap(), model.identity()]
}

/// Matrix of `𝓢` on `span{𝓕(H), E, 1}` (columns are images) and the worst
/// fit residual.
pub fn s_matrix(model: &SiteModel) -> (Matrix3<C>, f64) {
    let basis = s_basis(model);
    let ip = |a: &Mat, b: &Mat| a.iter().zip(b.iter()).map(|(u, v)| u.conj() * v).sum::<C>();
    let g = Matrix3::from_fn(|i, j| ip(&basis[i], &basis[j]));
    let lu = g.lu();
    let mut m = Matrix3::zeros();
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let img = model.s_map(&basis[j]);
        let rhs = nalgebra::Vector3::from_fn(|i, _| ip(&basis[i], &img));
        let c = lu.solve(&rhs).unwrap_or_else(nalgebra::Vector3::zeros);
        let fit = &basis[0] * c[0] + &basis[1] * c[1] + &basis[2] * c[2];
        worst = worst.max(crate::max_diff(&fit, &img));
        m.set_column(j, &c);
    }
    (m, worst)
}

/// The matrix of `𝓢` in closed form, in the basis of [`s_basis`]:
///
/// ```text
/// [ (d−2)²/(d−1)²   (d−3)/(d−1)    0 ]
/// [ 0               1/(d−1)²       0 ]
/// [ (d−2)/(d−1)     (d−2)/(d−1)²   2 ]
/// ```
pub fn printed_s_matrix(d: f64) -> Matrix3<f64> {
    let e = d - 1.0;
    Matrix3::new(
        (d - 2.0).powi(2) / (e * e),
        (d - 3.0) / e,
        0.0,
        0.0,
        1.0 / (e * e),
        0.0,
        (d - 2.0) / e,
        (d - 2.0) / (e * e),
        2.0,
    )
}

/// Eigenpairs of a matrix with the zero pattern of [`printed_s_matrix`]:
/// `(2, e₃)`, `(m₀₀, (2 − m₀₀, 0, −m₂₀))` and
/// `(m₁₁, (1, −1, (m₂₁ − m₂₀)/(2 − m₁₁)))`. The last vector solves the first
/// row only when `m₀₀ − m₁₁ = m₀₁`, which the closed form satisfies for
/// every `d`; [`eigen_residual`] measures this.
pub fn s_eigenpairs(m: &Matrix3<f64>) -> [(f64, nalgebra::Vector3<f64>); 3] {
    let a = m[(0, 0)];
    let c = m[(1, 1)];
    let e = m[(2, 0)];
    let f = m[(2, 1)];
    [
        (2.0, nalgebra::Vector3::new(0.0, 0.0, 1.0)),
        (a, nalgebra::Vector3::new(2.0 - a, 0.0, -e)),
        (c, nalgebra::Vector3::new(1.0, -1.0, (f - e) / (2.0 - c))),
    ]
}

pub fn eigen_residual(m: &Matrix3<f64>, lambda: f64, v: &nalgebra::Vector3<f64>) -> f64 {
    (m * v - v * lambda).amax()
}

/// Operator `v₀ 𝓕(H) + v₁ E + v₂ 1`.
pub fn density(model: &SiteModel, v: &nalgebra::Vector3<f64>) -> Mat {
    let [fh, e, one] = s_basis(model);
    fh * C::new(v[0], 0.0) + e * C::new(v[1], 0.0) + one * C::new(v[2], 0.0)
}

const SCHUR_ITERATIONS: usize = 10_000;

/// Eigenvalues from the Schur form. The shifted QR iteration can stall on
/// spectra with several eigenvalues of equal modulus; it is then retried on
/// `m + s·1` for a few shifts `s`.
pub fn eigenvalues(m: &Mat) -> Result<Vec<C>> {
    let n = m.nrows();
    for shift in [
        C::new(0.0, 0.0),
        C::new(0.37, 0.0),
        C::new(0.0, 0.61),
        C::new(-1.3, 0.7),
    ] {
        let shifted = m + Mat::identity(n, n) * shift;
        if let Some(s) = nalgebra::Schur::try_new(shifted, f64::EPSILON, SCHUR_ITERATIONS) {
            let t = s.unpack().1;
            return Ok((0..n).map(|i| t[(i, i)] - shift).collect());
        }
    }
    Err(PlanarError::Eigen)
}

/// Eigenvalues of `h`, sorted, when all of them are real to within `tol`
/// (relative to the largest modulus).
pub fn real_spectrum(h: &Mat, tol: f64) -> Result<Vec<f64>> {
    let eigs = eigenvalues(h)?;
    let scale = eigs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if let Some(z) = eigs.iter().find(|z| z.im.abs() > tol * scale) {
        return Err(PlanarError::Shape(format!("eigenvalue {z} is not real")));
    }
    let mut re: Vec<f64> = eigs.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    Ok(re)
}

/// `∪ ⊗ ∪ ⊗ …` on `k` sites (`k` even), normalised.
pub fn cup_vacuum(model: &SiteModel, k: usize) -> Vector {
    let nn = model.n() * model.n();
    let cup = Vector::from_iterator(nn, model.cup().transpose().iter().copied());
    let mut v = Vector::from_element(1, C::new(1.0, 0.0));
    for _ in 0..k / 2 {
        v = v.kronecker(&cup);
    }
    let n = v.norm();
    v / C::new(n, 0.0)
}

/// Rescaled correlations `c_n · ⟨T_{X_n} ξ, η⟩` along `X_n = 𝓡^{n+offset}(b1)`,
/// split by the parity of `n + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlations {
    pub even: Vec<C>,
    pub odd: Vec<C>,
    /// `⟨T_X ξ, η⟩` at the even and odd limit points, lifted with `p = 1`.
    pub even_limit: C,
    pub odd_limit: C,
    pub limit_points: [ChartPoint; 2],
}

impl Correlations {
    /// `|a_m − a_{m−1}|` for the last element of each subsequence.
    pub fn last_steps(&self) -> (f64, f64) {
        let step = |v: &[C]| match v {
            [.., a, b] => (b - a).norm(),
            _ => f64::INFINITY,
        };
        (step(&self.even), step(&self.odd))
    }
}

fn pairing(model: &SiteModel, x: &Q4Vec<C>, k: usize, xi: &Vector, eta: &Vector) -> C {
    let t = Transfer::new(model, &vec![model.op(x); k]);
    eta.dotc(&t.apply(xi))
}

/// Iterates the renormalisation map from `b1` and evaluates rescaled
/// correlations at `k` sites, `n = 0..2·m_max`. The constants come from the
/// attracting limit of the same parity (two points for a 2-cycle, one for a
/// fixed point), located by Newton from the tail of the chart orbit.
pub fn correlation_sequence(
    model: &SiteModel,
    k: usize,
    xi: &Vector,
    eta: &Vector,
    m_max: usize,
    offset: usize,
) -> Result<Correlations> {
    if k == 0 || k % 2 == 1 {
        return Err(PlanarError::Shape(format!(
            "the cup vacuum needs an even site count, got {k}"
        )));
    }
    let d = model.loop_value();
    let lp = LoopParam::new(d);
    let lpr = LoopParam::new(d.re);
    let tail = iterate(ChartPoint::new(0.0, 0.0), &lpr, 1000);
    let seed = *tail.points.last().ok_or(PlanarError::Singular)?;
    let p_even = newton_fixed_point(seed, &lpr, 2).map_err(|_| PlanarError::Singular)?;
    let p_odd = chart_map(&p_even, &lpr).map_err(|_| PlanarError::Singular)?;
    let to_c = |x: Q4Vec<f64>| x.map(|v| C::new(*v, 0.0));
    let limits = [to_c(lift(&p_even)), to_c(lift(&p_odd))];
    let omega = cup_vacuum(model, k);
    let refs = limits.clone().map(|x| pairing(model, &x, k, &omega, &omega));
    let limit_vals = limits.map(|x| pairing(model, &x, k, xi, eta));

    let mut x = Q4Vec::<C>::b1();
    for _ in 0..offset {
        x = renorm_r(&x, &lp).map_err(|_| PlanarError::Singular)?;
    }
    let total = 2 * m_max + 2;
    let mut raw = Vec::with_capacity(total);
    let mut vac = Vec::with_capacity(total);
    for _ in 0..total {
        let norm = x.norm();
        x = x.scale(C::new(1.0 / norm, 0.0));
        raw.push(pairing(model, &x, k, xi, eta));
        vac.push(pairing(model, &x, k, &omega, &omega));
        x = renorm_r(&x, &lp).map_err(|_| PlanarError::Singular)?;
    }
    // 1000 is even, so the chart orbit's tail sits at the even limit.
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (n, (s, v)) in raw.iter().zip(&vac).enumerate() {
        let parity = (n + offset) % 2;
        let c = rescale_constants(refs[parity], &[*v]).map_err(|_| PlanarError::Singular)?[0];
        if parity == 0 {
            even.push(c * s);
        } else {
            odd.push(c * s);
        }
    }
    Ok(Correlations {
        even,
        odd,
        even_limit: limit_vals[0],
        odd_limit: limit_vals[1],
        limit_points: [p_even, p_odd],
    })
}
