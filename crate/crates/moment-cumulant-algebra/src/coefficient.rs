use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Field the series algebra runs over: floats, or exact rationals.
pub trait Coefficient:
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
{
    /// Exact for rationals (every finite double is a dyadic rational).
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_i64(v: i64) -> Self;
}

impl Coefficient for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Coefficient for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Coefficient for BigRational {
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite value")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// `n!` in the coefficient type.
pub fn factorial<C: Coefficient>(n: usize) -> C {
    (1..=n).fold(C::one(), |acc, k| acc * C::from_i64(k as i64))
}

pub fn binomial<C: Coefficient>(n: usize, k: usize) -> C {
    if k > n {
        return C::zero();
    }
    let mut acc = C::one();
    for i in 0..k {
        acc = acc * C::from_i64((n - i) as i64) / C::from_i64((i + 1) as i64);
    }
    acc
}

pub fn pow<C: Coefficient>(base: &C, e: usize) -> C {
    (0..e).fold(C::one(), |acc, _| acc * base.clone())
}
