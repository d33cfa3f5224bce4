//! The large-time cumulant generating function `mu(xi, lambda)`,
//! `<e^{lambda N(x,t)}> ~ e^{-sqrt(t) mu}` with `x = -2 xi sqrt(t)`.
//!
//! Inside `|omega| < 0.999` the series
//! `mu = sum_n (-omega)^n n^{-3/2} A(sqrt(n) xi) + xi log[(1+rho_+(e^l-1))/(1+rho_-(e^{-l}-1))]`
//! is summed directly.  Outside it, `-log <e^{lambda N}> / sqrt(t)` is
//! evaluated at a few large `t` and extrapolated to `t = infinity`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use kernel_fredholm::{omega_of_lambda_real, BesselSpectrum, DensityPair, GfEvaluator};

use crate::error::{LdfError, Result};
use crate::special::{xi_func, LdfScalar};

/// `|omega|` below which the series is used.
pub const SERIES_OMEGA_MAX: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuMethod {
    Series,
    Extrapolation,
}

impl MuMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuMethod::Series => "series",
            MuMethod::Extrapolation => "extrapolation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuValue<T> {
    pub value: T,
    pub method: MuMethod,
    /// Series terms summed; zero for extrapolation.
    pub terms: usize,
    /// Set when the finite-`t` sequence was not monotone beyond tolerance.
    pub low_confidence: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuOptions {
    /// Absolute tolerance of the series tail.
    pub tol: f64,
    pub max_terms: usize,
    /// Distinct times for the extrapolation.
    pub times: [f64; 3],
    /// Allowed non-monotonicity of the finite-`t` sequence.
    pub monotone_tol: f64,
}

impl Default for MuOptions {
    fn default() -> Self {
        MuOptions { tol: 1e-15, max_terms: 5_000_000, times: [400.0, 1600.0, 6400.0], monotone_tol: 1e-4 }
    }
}

type SpectrumCache<T> = Mutex<HashMap<(u64, u64), Arc<BesselSpectrum<T>>>>;

/// Evaluates `mu` at fixed densities, caching the kernel spectra used by
/// the extrapolation.
#[derive(Debug)]
pub struct MuEvaluator<T> {
    pub density: DensityPair<T>,
    pub options: MuOptions,
    cache: SpectrumCache<T>,
}

impl<T: LdfScalar> Clone for MuEvaluator<T> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().map(|c| c.clone()).unwrap_or_default();
        MuEvaluator { density: self.density, options: self.options.clone(), cache: Mutex::new(cache) }
    }
}

impl<T: LdfScalar> MuEvaluator<T> {
    pub fn new(density: DensityPair<T>) -> Self {
        Self::with_options(density, MuOptions::default())
    }

    pub fn with_options(density: DensityPair<T>, options: MuOptions) -> Self {
        MuEvaluator { density, options, cache: Mutex::new(HashMap::new()) }
    }

    pub fn omega(&self, lambda: T) -> T {
        omega_of_lambda_real(lambda, &self.density)
    }

    pub fn in_series_domain(&self, lambda: T) -> bool {
        self.omega(lambda).abs() < T::lit(SERIES_OMEGA_MAX)
    }

    pub fn mu(&self, xi: T, lambda: T) -> Result<MuValue<T>> {
        if !(xi.is_finite() && lambda.is_finite()) {
            return Err(LdfError::InvalidArgument(format!("non-finite point ({xi}, {lambda})")));
        }
        if self.in_series_domain(lambda) {
            self.mu_series(xi, lambda)
        } else {
            self.mu_extrapolated(xi, lambda)
        }
    }

    /// `xi log[(1+rho_+(e^l-1))/(1+rho_-(e^{-l}-1))]`.
    pub fn drift(&self, xi: T, lambda: T) -> T {
        let d = &self.density;
        xi * ((d.rho_plus * lambda.exp_m1()).ln_1p() - (d.rho_minus * (-lambda).exp_m1()).ln_1p())
    }

    /// Series form; errors outside `|omega| < 1`.
    ///
    /// With `A(y) = |y| + Xi(|y|)` the linear part sums to `-|xi| log(1+omega)`
    /// and the rest decays like a Gaussian in `sqrt(n) xi`.
    pub fn mu_series(&self, xi: T, lambda: T) -> Result<MuValue<T>> {
        let w = self.omega(lambda);
        if !(w.abs() < T::one()) {
            return Err(LdfError::Domain(format!("series needs |omega| < 1, omega = {w}")));
        }
        let ax = xi.abs();
        let tol = T::lit(self.options.tol);
        let gap = T::one() - w.abs();
        let mut sum = T::zero();
        let mut pw = T::one();
        let mut terms = 0;
        for n in 1..=self.options.max_terms {
            pw *= -w;
            if pw == T::zero() {
                break;
            }
            let nf = T::from_usize_lossy(n);
            let g = xi_func(nf.sqrt() * ax);
            sum += pw * g / (nf * nf.sqrt());
            terms = n;
            // the summand magnitudes decrease, so the tail is at most geometric
            let n1 = nf + T::one();
            let bound = pw.abs() * w.abs() * xi_func(n1.sqrt() * ax) / (n1 * n1.sqrt() * gap);
            if bound < tol {
                break;
            }
        }
        let value = sum - ax * w.ln_1p() + self.drift(xi, lambda);
        Ok(MuValue { value, method: MuMethod::Series, terms, low_confidence: false })
    }

    fn spectrum(&self, x: u64, t: T) -> Arc<BesselSpectrum<T>> {
        let key = (x, t.as_f64().to_bits());
        if let Some(s) = self.cache.lock().ok().and_then(|c| c.get(&key).cloned()) {
            return s;
        }
        let s = Arc::new(BesselSpectrum::new(x, t));
        if let Ok(mut c) = self.cache.lock() {
            c.entry(key).or_insert_with(|| s.clone());
        }
        s
    }

    /// `-log <e^{lambda N(x,t)}> / sqrt(t)` at real `x = -2 xi sqrt(t)`,
    /// linear in `x` between neighbouring sites.
    pub fn finite_time(&self, xi: T, lambda: T, t: T) -> Result<T> {
        let xr = -T::lit(2.0) * xi * t.sqrt();
        let (lo, hi) = (xr.floor(), xr.ceil());
        let at = |x: T| -> Result<T> {
            let xi64 = x.to_i64().ok_or_else(|| LdfError::InvalidArgument(format!("site {x} out of range")))?;
            let g = GfEvaluator::with_spectrum(xi64, self.density, self.spectrum(xi64.unsigned_abs(), t))?;
            let v = g.log_gf(lambda);
            if !v.is_finite() {
                return Err(LdfError::Domain(format!("log generating function not finite at lambda = {lambda}")));
            }
            Ok(-v / t.sqrt())
        };
        let f_lo = at(lo)?;
        if hi == lo {
            return Ok(f_lo);
        }
        let f_hi = at(hi)?;
        let w = xr - lo;
        Ok(f_lo * (T::one() - w) + f_hi * w)
    }

    /// Quadratic extrapolation in `h = 1/sqrt(t)` through the three times.
    pub fn mu_extrapolated(&self, xi: T, lambda: T) -> Result<MuValue<T>> {
        let ts = self.options.times;
        let f: Vec<T> = ts.iter().map(|&t| self.finite_time(xi, lambda, T::lit(t))).collect::<Result<_>>()?;
        let h: Vec<T> = ts.iter().map(|&t| T::one() / T::lit(t).sqrt()).collect();
        // Lagrange interpolation through (h_i, f_i), evaluated at h = 0
        let mut value = T::zero();
        for i in 0..3 {
            let mut w = T::one();
            for j in 0..3 {
                if j != i {
                    w *= h[j] / (h[j] - h[i]);
                }
            }
            value += w * f[i];
        }
        let (d1, d2) = (f[1] - f[0], f[2] - f[1]);
        let mt = T::lit(self.options.monotone_tol);
        let low_confidence = d1 * d2 < T::zero() && d1.abs().min(d2.abs()) > mt;
        Ok(MuValue { value, method: MuMethod::Extrapolation, terms: 0, low_confidence })
    }
}
