use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;
use q4core::{LoopParam, Q4Vec};
use serde::{Deserialize, Serialize};
use trees::{LabelSource, LeafWord};

use crate::error::{AbcError, Result};
use crate::spectral::{alpha_prefactor, c_factor, family_z, orbit_walk, scales_predicate};
use crate::AbcTriple;

type C = Complex64;

/// Which member of a basic triple a label descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
    C,
}

/// A label `scale · α^k(X)` with `X` the `class` member of root triple `root`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub class: Class,
    pub k: i32,
    pub scale: C,
    pub root: u8,
}

/// `L_w = κ · A(ε ω^pow z)`, with `z` the spectral value of the subtree root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub kappa: C,
    pub eps: i8,
    pub pow: i32,
}

/// One subtree root: the label on word `0` (or `1`) is `scale · triple.c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub triple: AbcTriple<C>,
    pub scale: C,
    /// Spectral value of the triple when it comes from the generic family.
    pub zeta: Option<C>,
}

/// A coherent assignment of labels to all nonempty leaf words.
///
/// Children are produced from the table
///
/// ```text
/// α^k(A) → (α^{k−1}(B), α^k(C))
/// α^k(B) → (α^k(C),     α^{k+1}(A))
/// α^k(C) → (α^k(A),     α^k(B))
/// ```
///
/// with the parent's scalar carried by the left child.
#[derive(Debug)]
pub struct CoherentChoice {
    lp: LoopParam<C>,
    roots: [Root; 2],
    cache: RwLock<HashMap<(u8, Class, i32), Q4Vec<C>>>,
}

impl Clone for CoherentChoice {
    fn clone(&self) -> Self {
        Self::from_roots(self.lp.clone(), self.roots.clone())
    }
}

impl CoherentChoice {
    pub fn from_roots(lp: LoopParam<C>, roots: [Root; 2]) -> Self {
        Self {
            lp,
            roots,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// The choice with `L_0 = A(z0)` and `L_1 = A(z1)`. Each subtree is built
    /// from the triple at `ζ = −ω z`, whose `C` member is proportional to `A(z)`.
    pub fn from_z(z0: C, z1: C, lp: &LoopParam<C>, nmax: usize) -> Result<Self> {
        let w = lp.omega();
        let mut roots = Vec::with_capacity(2);
        for z in [z0, z1] {
            if !scales_predicate(z, lp, nmax) {
                return Err(AbcError::Scales(z));
            }
            let zeta = -w * z;
            roots.push(Root {
                triple: family_z(zeta, lp)?,
                scale: 1.0 / c_factor(zeta, lp)?,
                zeta: Some(zeta),
            });
        }
        let [r0, r1]: [Root; 2] = roots.try_into().expect("two roots");
        Ok(Self::from_roots(lp.clone(), [r0, r1]))
    }

    pub fn loop_param(&self) -> &LoopParam<C> {
        &self.lp
    }

    pub fn roots(&self) -> &[Root; 2] {
        &self.roots
    }

    pub fn entry(&self, word: &LeafWord) -> Result<Entry> {
        let Some(first) = word.first() else {
            return Err(AbcError::EmptyWord);
        };
        let mut e = Entry {
            class: Class::C,
            k: 0,
            scale: self.roots[first as usize].scale,
            root: first,
        };
        for &bit in &word.0[1..] {
            let (class, k) = match (e.class, bit) {
                (Class::A, 0) => (Class::B, e.k - 1),
                (Class::A, _) => (Class::C, e.k),
                (Class::B, 0) => (Class::C, e.k),
                (Class::B, _) => (Class::A, e.k + 1),
                (Class::C, 0) => (Class::A, e.k),
                (Class::C, _) => (Class::B, e.k),
            };
            e = Entry {
                class,
                k,
                scale: if bit == 0 { e.scale } else { C::new(1.0, 0.0) },
                root: e.root,
            };
        }
        Ok(e)
    }

    fn base(&self, root: u8, class: Class, k: i32) -> Result<Q4Vec<C>> {
        if let Some(v) = self.cache.read().expect("cache lock").get(&(root, class, k)) {
            return Ok(v.clone());
        }
        let t = &self.roots[root as usize].triple;
        let x = match class {
            Class::A => &t.a,
            Class::B => &t.b,
            Class::C => &t.c,
        };
        let v = if k == 0 {
            x.clone()
        } else {
            // orbit_walk normalises; restore the exact α-power scale by
            // stepping with the unnormalised maps.
            orbit_walk(x, k, &self.lp)?;
            q4core::alpha_pow(x, k, &self.lp)?
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert((root, class, k), v.clone());
        Ok(v)
    }

    pub fn label(&self, word: &LeafWord) -> Result<Q4Vec<C>> {
        let e = self.entry(word)?;
        Ok(self.base(e.root, e.class, e.k)?.scale(e.scale))
    }

    /// `(L_{w0}, L_{w1}, L_w)`, which must solve the ABC equation.
    pub fn vertex(&self, word: &LeafWord) -> Result<AbcTriple<C>> {
        Ok(AbcTriple::new(
            self.label(&word.child(0))?,
            self.label(&word.child(1))?,
            self.label(word)?,
        ))
    }

    /// Unwinds the induction into `κ, ε, p` with `L_w = κ·A(ε ω^p z)`, where
    /// `z` is the spectral value of `L_0` or `L_1`. Needs family roots.
    pub fn precision(&self, word: &LeafWord) -> Result<Precision> {
        let e = self.entry(word)?;
        let root = &self.roots[e.root as usize];
        let zeta = root.zeta.ok_or(AbcError::Domain("root has no spectral value"))?;
        let w = self.lp.omega();
        let z_root = -zeta / w;
        let (mut kappa, mut eps, mut pow) = match e.class {
            Class::A => (C::new(1.0, 0.0), -1i8, 1i32),
            Class::B => (C::new(1.0, 0.0), -1, -1),
            Class::C => (c_factor(zeta, &self.lp)?, 1, 0),
        };
        let y = |eps: i8, pow: i32| z_root * w.powi(pow) * f64::from(eps);
        for _ in 0..e.k.unsigned_abs() {
            if e.k > 0 {
                kappa = alpha_prefactor(y(eps, pow), &self.lp)? / kappa;
                eps = -eps;
                pow -= 3;
            } else {
                eps = -eps;
                pow += 3;
                kappa = alpha_prefactor(y(eps, pow), &self.lp)? / kappa;
            }
        }
        Ok(Precision {
            kappa: kappa * e.scale,
            eps,
            pow,
        })
    }

    /// The spectral value `ε ω^p z` of a word.
    pub fn spectral_value(&self, word: &LeafWord) -> Result<C> {
        let p = self.precision(word)?;
        let e = self.entry(word)?;
        let zeta = self.roots[e.root as usize].zeta.expect("checked by precision");
        let w = self.lp.omega();
        Ok(-zeta / w * w.powi(p.pow) * f64::from(p.eps))
    }
}

impl LabelSource for CoherentChoice {
    type Label = Q4Vec<C>;

    fn label(&self, word: &LeafWord) -> Option<Q4Vec<C>> {
        CoherentChoice::label(self, word).ok()
    }
}
