use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::diagram::TLDiagram;
use crate::error::{Result, TlError};

type C = Complex64;

/// A linear combination of diagrams with a common boundary and loop value.
#[derive(Debug, Clone, PartialEq)]
pub struct TLElement {
    bottom: usize,
    top: usize,
    delta: f64,
    terms: BTreeMap<TLDiagram, C>,
}

impl TLElement {
    pub fn zero(bottom: usize, top: usize, delta: f64) -> Self {
        Self {
            bottom,
            top,
            delta,
            terms: BTreeMap::new(),
        }
    }

    pub fn diagram(d: TLDiagram, delta: f64) -> Self {
        let mut e = Self::zero(d.bottom(), d.top(), delta);
        e.terms.insert(d, C::new(1.0, 0.0));
        e
    }

    pub fn identity(n: usize, delta: f64) -> Self {
        Self::diagram(TLDiagram::identity(n), delta)
    }

    pub fn generator(n: usize, i: usize, delta: f64) -> Result<Self> {
        Ok(Self::diagram(TLDiagram::generator(n, i)?, delta))
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> C {
        self.terms.get(d).copied().unwrap_or_default()
    }

    pub fn scale(mut self, c: C) -> Self {
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self.prune()
    }

    pub fn add(mut self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        for (d, c) in &other.terms {
            *self.terms.entry(d.clone()).or_default() += c;
        }
        Ok(self.prune())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(TlError::SizeMismatch {
                upper: self.bottom,
                lower: other.bottom,
            });
        }
        if self.delta != other.delta {
            return Err(TlError::ParameterMismatch {
                element: self.delta,
                rep: other.delta,
            });
        }
        Ok(())
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > 0.0);
        self
    }

    /// Largest coefficient difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&TLDiagram> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.dedup();
        keys.into_iter()
            .map(|d| (self.coefficient(d) - other.coefficient(d)).norm())
            .fold(0.0, f64::max)
    }
}

/// `upper ∘ lower`, each closed loop contributing a factor `δ`.
pub fn tl_compose(upper: &TLElement, lower: &TLElement) -> Result<TLElement> {
    if upper.delta != lower.delta {
        return Err(TlError::ParameterMismatch {
            element: upper.delta,
            rep: lower.delta,
        });
    }
    if upper.bottom != lower.top {
        return Err(TlError::SizeMismatch {
            upper: upper.bottom,
            lower: lower.top,
        });
    }
    let mut out = TLElement::zero(lower.bottom, upper.top, upper.delta);
    for (du, cu) in &upper.terms {
        for (dl, cl) in &lower.terms {
            let (d, loops) = du.compose(dl)?;
            *out.terms.entry(d).or_default() += cu * cl * upper.delta.powi(loops as i32);
        }
    }
    Ok(out.prune())
}

/// The two-strand Jones-Wenzl idempotent `p₂ = 1 − e₁/δ`.
pub fn jw2(delta: f64) -> Result<TLElement> {
    if delta == 0.0 {
        return Err(TlError::Domain("the Jones-Wenzl projector needs delta != 0"));
    }
    TLElement::identity(2, delta).add(&TLElement::generator(2, 0, delta)?.scale(C::new(-1.0 / delta, 0.0)))
}
