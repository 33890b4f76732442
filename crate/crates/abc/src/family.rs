use q4core::{alpha, beta, LoopParam, Q4Vec, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{nz, AbcError, Result};

/// Labels `A, B` on the two children and `C` on the parent of one vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbcTriple<S> {
    pub a: Q4Vec<S>,
    pub b: Q4Vec<S>,
    pub c: Q4Vec<S>,
}

impl<S: Scalar> AbcTriple<S> {
    pub fn new(a: Q4Vec<S>, b: Q4Vec<S>, c: Q4Vec<S>) -> Self {
        Self { a, b, c }
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.a
            .max_diff(&o.a)
            .max(self.b.max_diff(&o.b))
            .max(self.c.max_diff(&o.c))
    }

    pub fn norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm())
    }
}

fn s<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

/// The solution family with `a₂ = b₂ = 1`, parametrised by `a = a₁`:
///
/// ```text
/// A = (a, 1, (d−3)a/(a+d²−3d+2))
/// B = (−(d−1)²(a+1)/a, 1, (d²−4d+3)(a+1)/(a+d−1))
/// C = (−(d−1)²(a+1)((d−2)a+d−1)/(a(a+d−1)), (d−1)(a+1)/a, −(a+1)((d−2)a+d−1)/a)
/// ```
pub fn solve_unique_family<S: Scalar>(a: &S, lp: &LoopParam<S>) -> Result<AbcTriple<S>> {
    let d = lp.d.clone();
    if (d.clone() - s(3)).vanishes() {
        return Err(AbcError::UseD3Branch);
    }
    let a = a.clone();
    let a_ = nz(a.clone(), "a")?;
    let da = nz(
        a.clone() + d.clone() * d.clone() - s::<S>(3) * d.clone() + s(2),
        "a + d^2 - 3d + 2",
    )?;
    let dd = nz(a.clone() + d.clone() - S::one(), "a + d - 1")?;
    let dm1 = d.clone() - S::one();
    let ap1 = a.clone() + S::one();
    let lin = (d.clone() - s(2)) * a.clone() + dm1.clone();
    let big_a = Q4Vec::new(a.clone(), S::one(), (d.clone() - s(3)) * a.clone() / da);
    let big_b = Q4Vec::new(
        -(dm1.clone() * dm1.clone()) * ap1.clone() / a_.clone(),
        S::one(),
        (d.clone() * d.clone() - s::<S>(4) * d + s(3)) * ap1.clone() / dd.clone(),
    );
    let big_c = Q4Vec::new(
        -(dm1.clone() * dm1.clone()) * ap1.clone() * lin.clone() / (a_.clone() * dd),
        dm1 * ap1.clone() / a_.clone(),
        -ap1 * lin / a_,
    );
    Ok(AbcTriple::new(big_a, big_b, big_c))
}

/// Residuals (lhs − rhs) of the three coefficient equations, `k = (d−2)/(d−1)`:
///
/// ```text
/// c₁ + c₂ = (a₂ + d·a₃)(k·b₁ + b₃)
/// k·c₁ + c₃ = (a₁ + a₂)(b₁ + d·b₂ + b₃)
/// 0 = k²a₁b₁ + a₁b₂ + a₁b₃ + a₂b₂ + d·a₂b₃ + k·a₃b₁ + a₃b₃
/// ```
pub fn verify_abc_eqs<S: Scalar>(t: &AbcTriple<S>, lp: &LoopParam<S>) -> Result<[S; 3]> {
    let d = lp.d.clone();
    let dm1 = nz(d.clone() - S::one(), "d - 1")?;
    let k = (d.clone() - s(2)) / dm1;
    let [a1, a2, a3] = t.a.to_array();
    let [b1, b2, b3] = t.b.to_array();
    let [c1, c2, c3] = t.c.to_array();
    let e1 = c1.clone() + c2 - (a2.clone() + d.clone() * a3.clone()) * (k.clone() * b1.clone() + b3.clone());
    let e2 = k.clone() * c1 + c3 - (a1.clone() + a2.clone()) * (b1.clone() + d.clone() * b2.clone() + b3.clone());
    let e3 = k.clone() * k.clone() * a1.clone() * b1.clone()
        + a1.clone() * b2.clone()
        + a1 * b3.clone()
        + a2.clone() * b2
        + d * a2 * b3.clone()
        + k * a3.clone() * b1
        + a3 * b3;
    Ok([e1, e2, e3])
}

/// The three triples generated from a solution by the moves
/// `(β(B), C, A)`, `(C, α(A), B)` and `(α(A), α(B), α(C))`.
pub fn successors<S: Scalar>(t: &AbcTriple<S>, lp: &LoopParam<S>) -> Result<[AbcTriple<S>; 3]> {
    Ok([
        AbcTriple::new(beta(&t.b, lp)?, t.c.clone(), t.a.clone()),
        AbcTriple::new(t.c.clone(), alpha(&t.a, lp)?, t.b.clone()),
        AbcTriple::new(alpha(&t.a, lp)?, alpha(&t.b, lp)?, alpha(&t.c, lp)?),
    ])
}
