use num_complex::Complex64;
use q4core::{LoopParam, Q4Vec, Scalar};
use serde::{Deserialize, Serialize};

use crate::coherent::{Class, Root};
use crate::error::{nz, Result};
use crate::spectral::orbit_walk;
use crate::AbcTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum D3Branch {
    One,
    Two,
}

fn s<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

/// `v(s) = (6s−2)/(−3s+2)`.
pub fn v_of_s<S: Scalar>(x: &S) -> Result<S> {
    let den = nz(s::<S>(2) - s::<S>(3) * x.clone(), "2 - 3s")?;
    Ok((s::<S>(6) * x.clone() - s(2)) / den)
}

/// `w(t) = 1/(3t−4)`.
pub fn w_of_t<S: Scalar>(t: &S) -> Result<S> {
    Ok(S::one() / nz(s::<S>(3) * t.clone() - s(4), "3t - 4")?)
}

/// `A1(s) = (v(s), 1, 0)`.
pub fn d3_a1<S: Scalar>(x: &S) -> Result<Q4Vec<S>> {
    Ok(Q4Vec::new(v_of_s(x)?, S::one(), S::zero()))
}

/// `A2(t) = (−2, 1, w(t))`.
pub fn d3_a2<S: Scalar>(t: &S) -> Result<Q4Vec<S>> {
    Ok(Q4Vec::new(-s::<S>(2), S::one(), w_of_t(t)?))
}

/// The two line-pair solution families at `d = 3`:
///
/// ```text
/// A1 = (v, 1, 0), B1 = (−4(1+v)/v, 1, 0), C1 = 2((1+v)/v)(−2, 1, −(1+v/2))
/// A2 = (−2, 1, w), B2 = (−2, 1, w/(w+1)), C2 = (−2(2w+1)/(w+1), 1, 0)
/// ```
pub fn d3_solutions<S: Scalar>(branch: D3Branch, param: &S) -> Result<AbcTriple<S>> {
    match branch {
        D3Branch::One => {
            let v = v_of_s(param)?;
            let vv = nz(v.clone(), "v")?;
            let f = s::<S>(2) * (S::one() + v.clone()) / vv.clone();
            Ok(AbcTriple::new(
                Q4Vec::new(v.clone(), S::one(), S::zero()),
                Q4Vec::new(-s::<S>(4) * (S::one() + v.clone()) / vv, S::one(), S::zero()),
                Q4Vec::new(-s::<S>(2), S::one(), -(S::one() + v / s(2))).scale(f),
            ))
        }
        D3Branch::Two => {
            let w = w_of_t(param)?;
            let w1 = nz(w.clone() + S::one(), "w + 1")?;
            Ok(AbcTriple::new(
                Q4Vec::new(-s::<S>(2), S::one(), w.clone()),
                Q4Vec::new(-s::<S>(2), S::one(), w.clone() / w1.clone()),
                Q4Vec::new(-s::<S>(2) * (s::<S>(2) * w + S::one()) / w1, S::one(), S::zero()),
            ))
        }
    }
}

/// Outcome of the `d = 3` scaling scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D3Report {
    pub s: f64,
    pub nmax: usize,
    pub ok: bool,
    /// `(class, k)` for every orbit element `α^k(X1(s))` that is undefined or
    /// singular.
    pub failures: Vec<(Class, i32)>,
}

/// Checks that `α^k` of `A1(s), B1(s), C1(s)` is defined and invertible for
/// all `|k| ≤ nmax`.
pub fn d3_scaling_predicate(x: f64, nmax: usize) -> D3Report {
    let lp = LoopParam::<Complex64>::from_d(3.0);
    let mut failures = Vec::new();
    match d3_solutions(D3Branch::One, &x) {
        Err(_) => failures.extend([Class::A, Class::B, Class::C].map(|c| (c, 0))),
        Ok(t) => {
            let to_c = |v: &Q4Vec<f64>| v.map(|x| Complex64::new(*x, 0.0));
            for (class, v) in [(Class::A, &t.a), (Class::B, &t.b), (Class::C, &t.c)] {
                let v = to_c(v);
                for dir in [1, -1] {
                    // First failing step in each direction.
                    if let Some(k) = (0..=nmax as i32).find(|&k| orbit_walk(&v, dir * k, &lp).is_err()) {
                        failures.push((class, dir * k));
                    }
                }
            }
        }
    }
    failures.sort_by_key(|f| (f.0, f.1));
    failures.dedup();
    D3Report {
        s: x,
        nmax,
        ok: failures.is_empty(),
        failures,
    }
}

impl Root {
    /// A `d = 3` subtree root built from the branch-one triple at `s`.
    pub fn d3(x: f64) -> Result<Self> {
        let t = d3_solutions(D3Branch::One, &x)?;
        let to_c = |v: &Q4Vec<f64>| v.map(|x| Complex64::new(*x, 0.0));
        Ok(Root {
            triple: AbcTriple::new(to_c(&t.a), to_c(&t.b), to_c(&t.c)),
            scale: Complex64::new(1.0, 0.0),
            zeta: None,
        })
    }
}
