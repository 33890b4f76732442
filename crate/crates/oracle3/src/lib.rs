//! The `d = 3` oracle: site space `ℂ³`, cup = cap = `Σ eᵢ ⊗ eᵢ`, and the
//! trivalent vertex `Y = ε/√2` built from the Levi-Civita symbol.

use std::sync::OnceLock;

use abc::{CoherentChoice, Root};
use nalgebra::DMatrix;
use num_complex::Complex64;
use planar::{labels_for_tree, solve_b_basis, BasisFit, Mat, PlanarError, SiteModel};
use q4core::LoopParam;
use trees::full_tree;

pub use planar::Result;

type C = Complex64;

/// The Levi-Civita symbol as exact integers; `Y = ε/√2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinDoubler {
    pub eps: [[[i8; 3]; 3]; 3],
}

fn levi_civita(i: usize, j: usize, k: usize) -> i8 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl SpinDoubler {
    /// `Y_{(jk), i} = ε_{ijk}/√2`, so that `Y_{(23), 1} > 0`.
    pub fn build() -> Self {
        let mut eps = [[[0i8; 3]; 3]; 3];
        for (i, a) in eps.iter_mut().enumerate() {
            for (j, b) in a.iter_mut().enumerate() {
                for (k, c) in b.iter_mut().enumerate() {
                    *c = levi_civita(i, j, k);
                }
            }
        }
        Self { eps }
    }

    /// `Σ_{jk} ε_{ijk} ε_{ljk} = 2 δ_{il}`, checked in integers.
    pub fn is_isometry(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|l| {
                let s: i32 = (0..3)
                    .flat_map(|j| (0..3).map(move |k| (j, k)))
                    .map(|(j, k)| (self.eps[i][j][k] * self.eps[l][j][k]) as i32)
                    .sum();
                s == if i == l { 2 } else { 0 }
            })
        })
    }

    /// `ε_{ijk} = ε_{jki}`.
    pub fn is_cyclic(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| self.eps[i][j][k] == self.eps[j][k][i])))
    }

    /// `Y` as a `9 × 3` matrix.
    pub fn y(&self) -> Mat {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        DMatrix::from_fn(9, 3, |row, i| C::new(self.eps[i][row / 3][row % 3] as f64 * r, 0.0))
    }
}

/// Dimension of the space of tensors `T_{ijk}` that are cyclically invariant
/// and equivariant for the rotation group (`T ∈ Hom(h, h ⊗ h)` commuting with
/// `so(3)`). The ε tensor spans it.
pub fn vertex_space_dimension() -> usize {
    // so(3) generators (L_a)_{bc} = −ε_{abc}.
    let gens: Vec<[[f64; 3]; 3]> = (0..3)
        .map(|a| {
            let mut g = [[0.0; 3]; 3];
            for (b, row) in g.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    *x = -(levi_civita(a, b, c) as f64);
                }
            }
            g
        })
        .collect();
    let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
    let mut rows: Vec<[f64; 27]> = Vec::new();
    // Cyclic invariance T_{ijk} − T_{jki} = 0.
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut r = [0.0; 27];
                r[idx(i, j, k)] += 1.0;
                r[idx(j, k, i)] -= 1.0;
                rows.push(r);
            }
        }
    }
    // Infinitesimal invariance of the 3-tensor: Σ over legs of g acting on that leg.
    for g in &gens {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut r = [0.0; 27];
                    for m in 0..3 {
                        r[idx(m, j, k)] += g[i][m];
                        r[idx(i, m, k)] += g[j][m];
                        r[idx(i, j, m)] += g[k][m];
                    }
                    rows.push(r);
                }
            }
        }
    }
    let a = DMatrix::from_fn(rows.len(), 27, |r, c| rows[r][c]);
    let sv = a.svd(false, false).singular_values;
    sv.iter().filter(|s| **s < 1e-10).count() + 27usize.saturating_sub(sv.len())
}

/// The operators `1, E, H, P` on two sites.
#[derive(Debug, Clone)]
pub struct BasisOps {
    pub id: Mat,
    pub e: Mat,
    pub h: Mat,
    pub p: Mat,
}

/// The flip `P(x ⊗ y) = y ⊗ x`.
pub fn flip() -> Mat {
    DMatrix::from_fn(9, 9, |r, c| {
        let (i, j) = (r / 3, r % 3);
        if c == j * 3 + i {
            C::new(1.0, 0.0)
        } else {
            C::new(0.0, 0.0)
        }
    })
}

fn build_model() -> SiteModel {
    let y = SpinDoubler::build().y();
    let ys = y.transpose();
    let one = DMatrix::identity(3, 3);
    SiteModel::new(one.clone(), one, y, ys).expect("shapes are fixed")
}

/// The `d = 3` site model with `b1 = H`, `b2 = 1`, `b3 = E`.
pub fn model() -> &'static SiteModel {
    static M: OnceLock<SiteModel> = OnceLock::new();
    M.get_or_init(build_model)
}

pub fn basis_ops() -> BasisOps {
    let m = model();
    BasisOps {
        id: m.identity(),
        e: m.cupcap(),
        h: m.two_vertex(),
        p: flip(),
    }
}

/// Recovers the `b`-basis from the dictionary fit with the braid constraint
/// `−2b1 + b2 ∝ P`.
pub fn solve_b_basis_d3(tolerance: f64) -> Result<BasisFit> {
    solve_b_basis(&build_model(), Some(&flip()), tolerance)
}

pub fn loop_param() -> LoopParam<C> {
    LoopParam::<C>::from_d(3.0)
}

/// A coherent choice whose two subtrees come from the line-pair family at
/// `s0` and `s1`.
pub fn d3_choice(s0: f64, s1: f64) -> std::result::Result<CoherentChoice, abc::AbcError> {
    Ok(CoherentChoice::from_roots(loop_param(), [Root::d3(s0)?, Root::d3(s1)?]))
}

/// Concrete labels of the full tree of depth `level` (`2^level` sites).
pub fn level_labels(choice: &CoherentChoice, level: usize) -> Result<Vec<Mat>> {
    labels_for_tree(model(), &full_tree(level), choice)
}

/// `‖T_{level+1} ∘ ι − ι ∘ T_level‖` (relative), with `level ∈ {1, 2}`.
pub fn scale_invariance_residual(choice: &CoherentChoice, level: usize) -> Result<f64> {
    if !(1..=2).contains(&level) {
        return Err(PlanarError::Level(level));
    }
    let coarse = level_labels(choice, level)?;
    let fine = level_labels(choice, level + 1)?;
    planar::scale_invariance_residual(model(), &coarse, &fine)
}

/// As [`scale_invariance_residual`] with one fine label replaced by
/// `label + 0.5·1`.
pub fn corrupted_scale_invariance_residual(choice: &CoherentChoice, level: usize) -> Result<f64> {
    let coarse = level_labels(choice, level)?;
    let mut fine = level_labels(choice, level + 1)?;
    fine[1] += model().identity() * C::new(0.5, 0.0);
    planar::scale_invariance_residual(model(), &coarse, &fine)
}
