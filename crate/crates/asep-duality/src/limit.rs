//! `tau = 1 - eps -> 1`: `<(1 - tau^N)^n> / eps^n -> <N^n>` of the symmetric process.

use kernel_fredholm::{DensityPair, LinalgScalar};
use moment_cumulant_algebra::moments_spectral;

use crate::duality::tau_moment;
use crate::error::{DualityError, Result};
use crate::params::AsepParams;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitPoint<T> {
    pub eps: T,
    /// `<(1 - tau^N)^n> / eps^n`.
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricLimitReport<T> {
    pub n: usize,
    pub x: i64,
    pub t: T,
    pub points: Vec<LimitPoint<T>>,
    /// Linear extrapolation to `eps = 0` through the two smallest `eps`.
    pub extrapolated: T,
    /// `<N(x,t)^n>` for `p = q = 1`.
    pub sep_value: T,
    pub abs_error: T,
    /// `abs_error / max(|sep_value|, 1)`; the symmetric moment may vanish.
    pub rel_error: T,
    /// Distance to `sep_value` decreases along the points.
    pub monotone: bool,
}

/// `<(1 - tau^N)^n> / eps^n` from the tau-moments of order `<= n`.
pub fn scaled_binomial_moment<T: LinalgScalar>(n: usize, x: i64, t: T, a: &AsepParams<T>) -> Result<T> {
    let eps = T::one() - a.tau();
    let mut acc = T::zero();
    let mut binom = T::one();
    for j in 0..=n {
        let m = if j == 0 { T::one() } else { tau_moment(j, x, t, a)?.real_value() };
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        acc += sign * binom * m;
        binom = binom * T::from_usize_lossy(n - j) / T::from_usize_lossy(j + 1);
    }
    Ok(acc / eps.powi(n as i32))
}

/// Evaluates the scaled moments at each `eps` (sorted in decreasing order)
/// with `q = 1`, `p = 1 - eps`, and compares with the symmetric moment.
pub fn symmetric_limit_check<T: LinalgScalar>(n: usize, x: i64, t: T, d: &DensityPair<T>, eps_list: &[T]) -> Result<SymmetricLimitReport<T>> {
    if !(1..=2).contains(&n) {
        return Err(DualityError::InvalidArgument(format!("order must be 1 or 2, got {n}")));
    }
    if eps_list.len() < 2 {
        return Err(DualityError::InvalidArgument("need at least two eps values".into()));
    }
    let mut eps: Vec<T> = eps_list.to_vec();
    if eps.iter().any(|&e| !(e > T::zero() && e <= T::lit(0.3))) {
        return Err(DualityError::InvalidArgument("eps values must lie in (0, 0.3]".into()));
    }
    eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut points = Vec::with_capacity(eps.len());
    for &e in &eps {
        let a = AsepParams::near_symmetric(e, *d)?;
        points.push(LimitPoint { eps: e, value: scaled_binomial_moment(n, x, t, &a)? });
    }
    let sep_value = moments_spectral(x, t, d, n)?[n - 1];
    let (p1, p2) = (&points[points.len() - 2], &points[points.len() - 1]);
    let extrapolated = p2.value - p2.eps * (p1.value - p2.value) / (p1.eps - p2.eps);
    let abs_error = (extrapolated - sep_value).abs();
    let rel_error = abs_error / sep_value.abs().max(T::one());
    let monotone = points.windows(2).all(|w| (w[1].value - sep_value).abs() <= (w[0].value - sep_value).abs());
    Ok(SymmetricLimitReport { n, x, t, points, extrapolated, sep_value, abs_error, rel_error, monotone })
}
