use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Field of coefficients used by the 4-box algebra.
///
/// Floating types treat anything below [`FLOAT_ZERO`] in modulus as a vanished
/// denominator; exact rationals only treat zero as vanished.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Modulus as a double (lossy for rationals).
    fn modulus(&self) -> f64;

    /// True when the value should be treated as a zero denominator.
    fn vanishes(&self) -> bool;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

pub const FLOAT_ZERO: f64 = 1e-12;

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn vanishes(&self) -> bool {
        self.abs() <= FLOAT_ZERO
    }
}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn vanishes(&self) -> bool {
        self.norm() <= FLOAT_ZERO
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn modulus(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// Exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Complex number from a real part.
pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
