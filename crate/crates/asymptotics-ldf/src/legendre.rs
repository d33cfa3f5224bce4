//! Rate functions as Legendre transforms:
//! `Phi(xi, q) = max_l (mu(xi, l) + l q)`, `phi(xi) = Phi(xi, 0)`,
//! `C(s) = inf_xi (2 s xi + phi(xi))`.

use kernel_fredholm::DensityPair;

use crate::error::{LdfError, Result};
use crate::mu::{MuEvaluator, MuMethod, SERIES_OMEGA_MAX};
use crate::optimize::{bisect, brent_max, brent_min};
use crate::special::{xi_func, LdfScalar};

/// Largest `|lambda|` searched.
pub const LAMBDA_MAX: f64 = 60.0;
/// Largest `|xi|` searched by [`RateFunctions::c_of_s`].
pub const XI_MAX: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform<T> {
    pub value: T,
    /// Maximiser `lambda` for `Phi`, minimiser `xi` for `C`.
    pub arg: T,
    pub method: MuMethod,
    pub low_confidence: bool,
}

#[derive(Debug)]
pub struct RateFunctions<T> {
    pub mu: MuEvaluator<T>,
    /// Relative abscissa tolerance of the optimisers.
    pub tol: T,
}

impl<T: LdfScalar> Clone for RateFunctions<T> {
    fn clone(&self) -> Self {
        RateFunctions { mu: self.mu.clone(), tol: self.tol }
    }
}

impl<T: LdfScalar> RateFunctions<T> {
    pub fn new(d: DensityPair<T>) -> Self {
        RateFunctions { mu: MuEvaluator::new(d), tol: T::zero() }
    }

    pub fn density(&self) -> &DensityPair<T> {
        &self.mu.density
    }

    /// The interval around `lambda = 0` on which `|omega| < 0.999`.
    pub fn series_interval(&self) -> (T, T) {
        let lim = T::lit(SERIES_OMEGA_MAX);
        let step = T::lit(0.05);
        let cap = T::lit(LAMBDA_MAX);
        let edge = |dir: T| -> T {
            let g = |l: T| -> std::result::Result<T, ()> { Ok(self.mu.omega(l).abs() - lim) };
            let mut prev = T::zero();
            let mut l = step;
            while l <= cap {
                if self.mu.omega(dir * l).abs() >= lim {
                    let r = bisect(|s| g(dir * s), prev, l, T::epsilon() * T::lit(16.0)).unwrap_or(prev);
                    // stay strictly inside
                    return dir * r.min(l).max(prev);
                }
                prev = l;
                l += step;
            }
            dir * cap
        };
        let (lo, hi) = (edge(-T::one()), edge(T::one()));
        // shrink by a hair so both ends evaluate inside the series domain
        let shrink = T::lit(1e-12);
        (lo + shrink * lo.abs(), hi - shrink * hi.abs())
    }

    /// `Phi(xi, q)`.
    ///
    /// The series objective is maximised on the series interval first; if
    /// the maximiser sits on its edge the extrapolated objective is
    /// maximised on a wider window instead.
    pub fn phi_height(&self, xi: T, q: T) -> Result<Transform<T>> {
        let (lo, hi) = self.series_interval();
        let cap = T::lit(LAMBDA_MAX);
        let s = brent_max(|l| self.mu.mu_series(xi, l).map(|m| m.value + l * q), lo, hi, self.tol)?;
        let margin = T::lit(1e-5) * (T::one() + s.x.abs());
        let at_lo = s.x - lo < margin && lo > -cap;
        let at_hi = hi - s.x < margin && hi < cap;
        if !(at_lo || at_hi) {
            if (s.x - lo < margin) || (hi - s.x < margin) {
                return Err(LdfError::Domain(format!("maximiser at lambda = {} is on the search cap", s.x)));
            }
            return Ok(Transform { value: s.value, arg: s.x, method: MuMethod::Series, low_confidence: false });
        }
        let mut pad = T::lit(2.0);
        loop {
            let (a, b) = ((lo - pad).max(-cap), (hi + pad).min(cap));
            let mut low = false;
            let r = brent_max(
                |l| {
                    let m = self.mu.mu_extrapolated(xi, l)?;
                    low |= m.low_confidence;
                    Ok::<T, LdfError>(m.value + l * q)
                },
                a,
                b,
                self.tol,
            )?;
            let margin = T::lit(1e-5) * (T::one() + r.x.abs());
            let interior = r.x - a > margin && b - r.x > margin;
            if interior {
                return Ok(Transform { value: r.value, arg: r.x, method: MuMethod::Extrapolation, low_confidence: low });
            }
            if a <= -cap && b >= cap {
                return Err(LdfError::Domain(format!(
                    "maximiser of the extrapolated objective reaches |lambda| = {LAMBDA_MAX} (|omega| >= 1 region)"
                )));
            }
            pad = pad * T::lit(2.0);
        }
    }

    /// `phi(xi) = Phi(xi, 0)`.
    pub fn phi_rate(&self, xi: T) -> Result<Transform<T>> {
        self.phi_height(xi, T::zero())
    }

    /// `C(s)` with its minimiser `xi`.
    pub fn c_of_s(&self, s: T) -> Result<Transform<T>> {
        let x0 = xi0_solve(self.density())?;
        let two = T::lit(2.0);
        let cap = T::lit(XI_MAX);
        let mut half = T::one();
        loop {
            let (a, b) = ((x0 - half).max(-cap), (x0 + half).min(cap));
            let mut method = MuMethod::Series;
            let mut low = false;
            let r = brent_min(
                |xi| {
                    let p = self.phi_rate(xi)?;
                    if p.method == MuMethod::Extrapolation {
                        method = MuMethod::Extrapolation;
                    }
                    low |= p.low_confidence;
                    Ok::<T, LdfError>(two * s * xi + p.value)
                },
                a,
                b,
                self.tol,
            )?;
            let margin = T::lit(1e-5) * (T::one() + r.x.abs());
            if r.x - a > margin && b - r.x > margin {
                return Ok(Transform { value: r.value, arg: r.x, method, low_confidence: low });
            }
            if a <= -cap || b >= cap {
                return Err(LdfError::Domain(format!("C(s) at s = {s} is not attained for |xi| <= {XI_MAX}")));
            }
            half = half * two;
        }
    }

    /// `d^n C/ds^n` at `s = 0` by central differences at steps `h, 2h, 4h`
    /// with two Richardson levels, `1 <= n <= 4`.
    pub fn c_derivative(&self, n: usize, h: T) -> Result<T> {
        let c = |s: T| self.c_of_s(s).map(|v| v.value);
        let mut cache: Vec<(T, T)> = Vec::new();
        let mut eval = |s: T| -> Result<T> {
            if let Some(&(_, v)) = cache.iter().find(|(k, _)| *k == s) {
                return Ok(v);
            }
            let v = c(s)?;
            cache.push((s, v));
            Ok(v)
        };
        let mut d = Vec::with_capacity(3);
        for k in [1.0, 2.0, 4.0] {
            let hk = h * T::lit(k);
            d.push(central(&mut eval, n, hk)?);
        }
        // d[0] at h, d[1] at 2h, d[2] at 4h; errors in even powers of h
        let r1 = (T::lit(4.0) * d[0] - d[1]) / T::lit(3.0);
        let r2 = (T::lit(4.0) * d[1] - d[2]) / T::lit(3.0);
        Ok((T::lit(16.0) * r1 - r2) / T::lit(15.0))
    }

    /// `lim <X_t^n>_c / sqrt(4t) = -C^{(n)}(0) / 2`.
    pub fn tracer_cumulant(&self, n: usize, h: T) -> Result<T> {
        Ok(-self.c_derivative(n, h)? / T::lit(2.0))
    }
}

fn central<T: LdfScalar>(f: &mut impl FnMut(T) -> Result<T>, n: usize, h: T) -> Result<T> {
    let two = T::lit(2.0);
    Ok(match n {
        1 => (f(h)? - f(-h)?) / (two * h),
        2 => (f(h)? - two * f(T::zero())? + f(-h)?) / (h * h),
        3 => (f(two * h)? - two * f(h)? + two * f(-h)? - f(-two * h)?) / (two * h * h * h),
        4 => (f(two * h)? - T::lit(4.0) * f(h)? + T::lit(6.0) * f(T::zero())? - T::lit(4.0) * f(-h)? + f(-two * h)?) / (h * h * h * h),
        _ => return Err(LdfError::InvalidArgument(format!("derivative order {n} not in 1..=4"))),
    })
}

/// Root of `2 xi rho_- = (rho_+ - rho_-) Xi(xi)`.
///
/// Errors when either density vanishes: with an empty side the equation
/// has no finite root.
pub fn xi0_solve<T: LdfScalar>(d: &DensityPair<T>) -> Result<T> {
    let (rm, rp) = (d.rho_minus, d.rho_plus);
    if rm == rp {
        return Ok(T::zero());
    }
    let g = |xi: T| T::lit(2.0) * xi * rm - (rp - rm) * xi_func(xi);
    let mut a = T::one();
    while !(g(-a) < T::zero() && g(a) > T::zero()) {
        a = a * T::lit(2.0);
        if a > T::lit(64.0) {
            return Err(LdfError::Domain(format!("no finite xi0 for rho_- = {rm}, rho_+ = {rp}")));
        }
    }
    let r = bisect(|x| Ok::<T, LdfError>(g(x)), -a, a, T::lit(1e-13))?;
    Ok(r)
}
