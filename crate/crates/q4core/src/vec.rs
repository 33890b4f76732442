use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{nonzero, Result};
use crate::{LoopParam, Q4Error, Scalar};

/// Coefficients `(p, q, r)` of `p·b1 + q·b2 + r·b3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Q4Vec<S> {
    pub p: S,
    pub q: S,
    pub r: S,
}

/// Coefficients `(x, y, z)` of `x·1 + y·E + z·H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IehVec<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

/// Affine chart coordinates `(u, v) = (q/p, r/p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub u: f64,
    pub v: f64,
}

impl<S: Scalar> Q4Vec<S> {
    pub fn new(p: S, q: S, r: S) -> Self {
        Self { p, q, r }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn b1() -> Self {
        Self::new(S::one(), S::zero(), S::zero())
    }

    pub fn b2() -> Self {
        Self::new(S::zero(), S::one(), S::zero())
    }

    pub fn b3() -> Self {
        Self::new(S::zero(), S::zero(), S::one())
    }

    pub fn scale(&self, s: S) -> Self {
        Self::new(
            self.p.clone() * s.clone(),
            self.q.clone() * s.clone(),
            self.r.clone() * s,
        )
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.p.clone(), self.q.clone(), self.r.clone()]
    }

    pub fn from_array([p, q, r]: [S; 3]) -> Self {
        Self::new(p, q, r)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Q4Vec<T> {
        Q4Vec::new(f(&self.p), f(&self.q), f(&self.r))
    }

    /// Change of basis: `b1 = H`, `b2 = 1`, `b3 = E`.
    pub fn to_ieh(&self) -> IehVec<S> {
        IehVec::new(self.q.clone(), self.r.clone(), self.p.clone())
    }

    pub fn norm(&self) -> f64 {
        (self.p.modulus().powi(2) + self.q.modulus().powi(2) + self.r.modulus().powi(2)).sqrt()
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let d = self.clone() - other.clone();
        d.p.modulus().max(d.q.modulus()).max(d.r.modulus())
    }

    /// `‖a ∧ b‖ / (‖a‖‖b‖)`: zero iff the two vectors are projectively equal.
    pub fn projective_residual(&self, other: &Self) -> f64 {
        let (a, b) = (self, other);
        let c1 = a.q.clone() * b.r.clone() - a.r.clone() * b.q.clone();
        let c2 = a.r.clone() * b.p.clone() - a.p.clone() * b.r.clone();
        let c3 = a.p.clone() * b.q.clone() - a.q.clone() * b.p.clone();
        let wedge = (c1.modulus().powi(2) + c2.modulus().powi(2) + c3.modulus().powi(2)).sqrt();
        let denom = a.norm() * b.norm();
        if denom == 0.0 {
            if wedge == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            wedge / denom
        }
    }

    /// Scalar `λ` with `self ≈ λ·other`, read off the largest component of `other`.
    pub fn ratio_to(&self, other: &Self) -> Result<S> {
        let a = self.to_array();
        let b = other.to_array();
        let (i, _) = b
            .iter()
            .enumerate()
            .map(|(i, x)| (i, x.modulus()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let den = nonzero(b[i].clone(), "reference vector")?;
        Ok(a[i].clone() / den)
    }
}

impl<S: Scalar> Add for Q4Vec<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.p + o.p, self.q + o.q, self.r + o.r)
    }
}

impl<S: Scalar> Sub for Q4Vec<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.p - o.p, self.q - o.q, self.r - o.r)
    }
}

impl<S: Scalar> Neg for Q4Vec<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.p, -self.q, -self.r)
    }
}

impl<S: Scalar> Mul<S> for Q4Vec<S> {
    type Output = Self;
    fn mul(self, s: S) -> Self {
        self.scale(s)
    }
}

impl<S: Scalar> IehVec<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn one() -> Self {
        Self::new(S::one(), S::zero(), S::zero())
    }

    pub fn e() -> Self {
        Self::new(S::zero(), S::one(), S::zero())
    }

    pub fn h() -> Self {
        Self::new(S::zero(), S::zero(), S::one())
    }

    pub fn to_q4(&self) -> Q4Vec<S> {
        Q4Vec::new(self.z.clone(), self.x.clone(), self.y.clone())
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn scale(&self, s: S) -> Self {
        Self::new(
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s,
        )
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let d = self.clone() - other.clone();
        d.x.modulus().max(d.y.modulus()).max(d.z.modulus())
    }

    /// Product in the commutative algebra `E² = dE, H² = H, EH = HE = 0`.
    pub fn mul(&self, o: &Self, lp: &LoopParam<S>) -> Self {
        let (x1, y1, z1) = (self.x.clone(), self.y.clone(), self.z.clone());
        let (x2, y2, z2) = (o.x.clone(), o.y.clone(), o.z.clone());
        Self::new(
            x1.clone() * x2.clone(),
            x1.clone() * y2.clone() + y1.clone() * x2.clone() + lp.d() * y1 * y2,
            x1 * z2.clone() + z1.clone() * x2 + z1 * z2,
        )
    }

    /// Eigenvalues on the minimal idempotents `E/d`, `H`, `1 − E/d − H`.
    pub fn spectrum(&self, lp: &LoopParam<S>) -> [S; 3] {
        [
            self.x.clone() + self.y.clone() * lp.d(),
            self.x.clone() + self.z.clone(),
            self.x.clone(),
        ]
    }

    /// Multiplicative inverse; fails if a spectral value vanishes.
    pub fn inverse(&self, lp: &LoopParam<S>) -> Result<Self> {
        let d = nonzero(lp.d(), "d")?;
        let [l1, l2, l3] = self.spectrum(lp);
        let l1 = nonzero(l1, "x + d·y")?;
        let l2 = nonzero(l2, "x + z")?;
        let l3 = nonzero(l3, "x")?;
        let i3 = S::one() / l3;
        Ok(Self::new(
            i3.clone(),
            (S::one() / l1 - i3.clone()) / d,
            S::one() / l2 - i3,
        ))
    }

    pub fn is_invertible(&self, lp: &LoopParam<S>) -> bool {
        self.spectrum(lp).iter().all(|l| !l.vanishes())
    }
}

impl<S: Scalar> Add for IehVec<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for IehVec<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl ChartPoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn dist(&self, o: &ChartPoint) -> f64 {
        ((self.u - o.u).powi(2) + (self.v - o.v).powi(2)).sqrt()
    }
}

impl<S: Scalar> Q4Vec<S> {
    /// Chart coordinates in the scalar type itself (exact for rationals).
    pub fn chart_coords(&self) -> Result<(S, S)> {
        if self.p.vanishes() {
            return Err(Q4Error::Infinity);
        }
        Ok((self.q.clone() / self.p.clone(), self.r.clone() / self.p.clone()))
    }

    pub fn lift_coords(u: S, v: S) -> Self {
        Self::new(S::one(), u, v)
    }
}

/// `(q/p, r/p)`.
pub fn chart(x: &Q4Vec<f64>) -> Result<ChartPoint> {
    if x.p.vanishes() {
        return Err(Q4Error::Infinity);
    }
    Ok(ChartPoint::new(x.q / x.p, x.r / x.p))
}

/// `(1, u, v)`.
pub fn lift(c: &ChartPoint) -> Q4Vec<f64> {
    Q4Vec::new(1.0, c.u, c.v)
}
