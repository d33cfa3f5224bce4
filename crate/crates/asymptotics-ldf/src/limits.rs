//! Large-time limits of cumulants and of the kernel traces.

use kernel_fredholm::{BesselSpectrum, DensityPair};
use moment_cumulant_algebra::{alpha, factorial, BigRational, Coefficient, MAX_CUMULANT};

use crate::error::{LdfError, Result};
use crate::special::{xi_func, xi_n, LdfScalar};


/// `lim <N(x,t)^n>_c / sqrt(t)` at `x = -2 xi sqrt(t)`:
/// `sum_l (-1)^{l-1} (l-1)! (alpha_{n,l}(r_+,r_-) Xi_l(-xi) - 2 alpha_{n,l}(1,0) xi rho_+^l)`.
pub fn limiting_cumulant_n<T: LdfScalar>(n: usize, xi: T, d: &DensityPair<T>) -> Result<T> {
    if n == 0 || n > MAX_CUMULANT {
        return Err(LdfError::InvalidArgument(format!("cumulant order must be in 1..={MAX_CUMULANT}, got {n}")));
    }
    let rm = BigRational::from_f64(d.rho_minus.as_f64());
    let rp = BigRational::from_f64(d.rho_plus.as_f64());
    let one = BigRational::from_i64(1);
    let zero = BigRational::from_i64(0);
    let r_plus = rp.clone() * (one.clone() - rm.clone());
    let r_minus = rm * (one.clone() - rp.clone());
    let mut acc = T::zero();
    let mut rpl = one.clone();
    for l in 1..=n {
        rpl = rpl * rp.clone();
        let w = factorial::<BigRational>(l - 1);
        let w = if l % 2 == 0 { -w } else { w };
        let bulk = (w.clone() * alpha(n, l, &r_plus, &r_minus)?).to_f64();
        let edge = (w * alpha(n, l, &one, &zero)? * rpl.clone()).to_f64();
        acc += T::lit(bulk) * xi_n(l as u32, -xi) - T::lit(2.0) * xi * T::lit(edge);
    }
    Ok(acc)
}

/// Mean height per `sqrt(t)` from the hydrodynamic profile
/// `rho(y,t) = rho_- + (rho_+ - rho_-) erfc(-y/sqrt(4t))/2`:
/// `(rho_+ - rho_-) Xi(-xi) - 2 xi rho_+`.
pub fn hydrodynamic_height<T: LdfScalar>(xi: T, d: &DensityPair<T>) -> T {
    (d.rho_plus - d.rho_minus) * xi_func(-xi) - T::lit(2.0) * xi * d.rho_plus
}

/// `lim <X_t^2>_c / sqrt(4t)` at equilibrium density `rho`.
pub fn tracer_variance_equilibrium<T: LdfScalar>(rho: T) -> T {
    (T::one() - rho) / (rho * T::PI().sqrt())
}

/// `lim <X_t^4>_c / sqrt(4t)` at equilibrium density `rho`.
pub fn tracer_fourth_cumulant_equilibrium<T: LdfScalar>(rho: T) -> T {
    let one = T::one();
    let s2 = T::SQRT_2();
    let a = one - rho;
    (a / (T::PI().sqrt() * rho * rho * rho))
        * (one - (T::lit(4.0) - (T::lit(8.0) - T::lit(3.0) * s2) * rho) * a + T::lit(12.0) / T::PI() * a * a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IasymRow<T> {
    pub t: T,
    pub x: u64,
    pub trace: T,
    /// `I_n(x,t) / (sqrt(t) Xi_n(-xi))`.
    pub ratio: T,
}

/// Ratios `I_n(x,t)/(sqrt(t) Xi_n(-xi))` with `x = round(-2 xi sqrt(t))`, for `xi <= 0`.
pub fn iasym_check<T: LdfScalar>(n: u32, xi: T, ts: &[T]) -> Result<Vec<IasymRow<T>>> {
    if n == 0 || n > 3 {
        return Err(LdfError::InvalidArgument(format!("n must be 1, 2 or 3, got {n}")));
    }
    if xi > T::zero() {
        return Err(LdfError::InvalidArgument(format!("xi must be <= 0 so that x >= 0, got {xi}")));
    }
    ts.iter()
        .map(|&t| {
            if !(t > T::zero()) {
                return Err(LdfError::InvalidArgument(format!("t must be positive, got {t}")));
            }
            let x = (-T::lit(2.0) * xi * t.sqrt()).round().to_u64().unwrap_or(0);
            let trace = BesselSpectrum::new(x, t).trace_power(n);
            Ok(IasymRow { t, x, trace, ratio: trace / (t.sqrt() * xi_n(n, -xi)) })
        })
        .collect()
}
