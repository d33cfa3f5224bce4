//! Time evolution of the tau-moments.

use contour_quad::Real;

use crate::duality::{tau_correlation2, tau_moment1};
use crate::error::{DualityError, Result};
use crate::params::AsepParams;

/// `(1 - tau^k)/(1 - tau) = 1 + tau + ... + tau^{k-1}`.
fn geometric<T: Real>(tau: T, k: u32) -> T {
    (0..k).fold(T::zero(), |acc, j| acc + tau.powi(j as i32))
}

/// `(tau^j - tau^k)/(1 - tau)`, finite at `tau = 1`.
fn diff_quotient<T: Real>(tau: T, j: u32, k: u32) -> T {
    if k >= j {
        tau.powi(j as i32) * geometric(tau, k - j)
    } else {
        -tau.powi(k as i32) * geometric(tau, j - k)
    }
}

/// Coefficients `[a_n, b_n, c_n, d_n]` of
/// `d/dt <tau^{nN(x)}> = <tau^{(n-2)N(x)} (a tau^{2N(x)} + b tau^{N(x)+N(x-1)} + c tau^{N(x)+N(x+1)} + d tau^{N(x+1)+N(x-1)})>`.
///
/// Written with the factors of `1 - tau` divided out, so `p = q` is allowed.
pub fn evolution_coefficients<T: Real>(n: u32, p: T, q: T) -> Result<[T; 4]> {
    if n == 0 {
        return Err(DualityError::InvalidArgument("order must be >= 1".into()));
    }
    if !(q > T::zero()) {
        return Err(DualityError::Domain(format!("q must be positive, got {q}")));
    }
    let tau = p / q;
    // (1 - tau^{-n})/(1 - tau)
    let lead = -geometric(tau, n) / tau.powi(n as i32);
    Ok([
        q * lead * diff_quotient(tau, n, 3),
        p * lead * diff_quotient(tau, 2, n),
        q * lead * diff_quotient(tau, 2, n),
        p * lead * diff_quotient(tau, n, 1),
    ])
}

/// Right-hand side of the evolution equation at time `t`.
pub fn evolution_rhs<T: Real>(n: u32, x: i64, t: T, a: &AsepParams<T>) -> Result<T> {
    let [ca, cb, cc, cd] = evolution_coefficients(n, a.p, a.q)?;
    match n {
        1 => {
            // d_1 = 0 and the remaining terms are one-point functions
            let f = |y| tau_moment1(y, t, a).map(|r| r.real_value());
            Ok(ca * f(x)? + cb * f(x - 1)? + cc * f(x + 1)?)
        }
        2 => {
            let f = |y1, y2| tau_correlation2(y1, y2, t, a).map(|r| r.real_value());
            Ok(ca * f(x, x)? + cb * f(x - 1, x)? + cc * f(x, x + 1)? + cd * f(x - 1, x + 1)?)
        }
        _ => Err(DualityError::InvalidArgument(format!("evolution check is available for n = 1, 2, got {n}"))),
    }
}

/// `|central difference in t - rhs|` with step `h`.
pub fn evolution_residual<T: Real>(n: u32, x: i64, t: T, a: &AsepParams<T>, h: T) -> Result<T> {
    if !(h > T::zero()) || !(t > h) {
        return Err(DualityError::InvalidArgument(format!("need 0 < h < t, got h = {h}, t = {t}")));
    }
    let m = |s: T| match n {
        1 => tau_moment1(x, s, a).map(|r| r.real_value()),
        2 => tau_correlation2(x, x, s, a).map(|r| r.real_value()),
        _ => Err(DualityError::InvalidArgument(format!("evolution check is available for n = 1, 2, got {n}"))),
    };
    let lhs = (m(t + h)? - m(t - h)?) / (h + h);
    Ok((lhs - evolution_rhs(n, x, t, a)?).abs())
}
