//! Truncated power series in `lambda`, stored as exponential-generating
//! coefficients: `coeffs[n]` multiplies `lambda^n / n!`.

use crate::coefficient::{binomial, factorial, Coefficient};
use crate::error::{Result, SeriesError};

pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoly<C> {
    pub order: usize,
    pub coeffs: Vec<C>,
}

impl<C: Coefficient> SeriesPoly<C> {
    pub fn zero(order: usize) -> Self {
        SeriesPoly { order, coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        SeriesPoly { order, coeffs }
    }

    /// `e^{s lambda}`: every coefficient is `s^n`.
    pub fn exp_linear(s: C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = C::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = p * s.clone();
        }
        SeriesPoly { order, coeffs }
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// Ordinary Taylor coefficient, `coeffs[n] / n!`.
    pub fn taylor(&self, n: usize) -> C {
        self.coeff(n) / factorial::<C>(n)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order.min(other.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let coeffs = (0..=n).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect();
        SeriesPoly { order: n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let coeffs = (0..=n).map(|i| self.coeffs[i].clone() - other.coeffs[i].clone()).collect();
        SeriesPoly { order: n, coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        SeriesPoly { order: self.order, coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Binomial convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = C::zero();
            for j in 0..=k {
                acc = acc + binomial::<C>(k, j) * self.coeffs[j].clone() * other.coeffs[k - j].clone();
            }
            coeffs.push(acc);
        }
        SeriesPoly { order: n, coeffs }
    }

    pub fn powi(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Derivative in `lambda`; in this convention a left shift.
    pub fn derivative(&self) -> Self {
        if self.order == 0 {
            return Self::zero(0);
        }
        SeriesPoly { order: self.order - 1, coeffs: self.coeffs[1..].to_vec() }
    }

    /// `exp(s)`, requires `s(0) = 0`.
    ///
    /// From `E' = s' E`: `e_{n+1} = sum_j C(n,j) s_{j+1} e_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != C::zero() {
            return Err(SeriesError::InvalidArgument("exp needs a zero constant term".into()));
        }
        let n = self.order;
        let mut e = vec![C::zero(); n + 1];
        e[0] = C::one();
        for m in 0..n {
            let mut acc = C::zero();
            for j in 0..=m {
                acc = acc + binomial::<C>(m, j) * self.coeffs[j + 1].clone() * e[m - j].clone();
            }
            e[m + 1] = acc;
        }
        Ok(SeriesPoly { order: n, coeffs: e })
    }

    /// `log(s)`, requires `s(0) = 1`.
    ///
    /// From `s L' = s'`: `l_{n+1} = s_{n+1} - sum_{j=1}^{n} C(n,j) s_j l_{n+1-j}`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::InvalidArgument("log needs a unit constant term".into()));
        }
        let n = self.order;
        let mut l = vec![C::zero(); n + 1];
        for m in 0..n {
            let mut acc = self.coeffs[m + 1].clone();
            for j in 1..=m {
                acc = acc - binomial::<C>(m, j) * self.coeffs[j].clone() * l[m + 1 - j].clone();
            }
            l[m + 1] = acc;
        }
        Ok(SeriesPoly { order: n, coeffs: l })
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SeriesPoly<D> {
        SeriesPoly { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> SeriesPoly<f64> {
        self.map(|c| c.to_f64())
    }
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(SeriesError::OrderTooLarge { order, cap: MAX_ORDER });
    }
    Ok(())
}
