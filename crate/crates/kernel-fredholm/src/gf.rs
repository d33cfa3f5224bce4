//! Generating function of the height `N(x,t)`, its probability mass
//! function and the tagged-particle distribution.

use std::cell::Cell;
use std::sync::Arc;

use contour_quad::{integrate_1d_capped, make_contour, Complex, Real};

use crate::density::DensityPair;
use crate::error::{KernelError, Result};
use crate::kernel::Evaluated;
use crate::linalg::LinalgScalar;
use crate::spectrum::BesselSpectrum;

/// `omega` written in terms of `a = e^lambda`, `b = e^{-lambda}`.
#[inline]
fn omega_ab<T: Real>(a: Complex<T>, b: Complex<T>, d: &DensityPair<T>) -> Complex<T> {
    let (ea, eb) = (a - T::one(), b - T::one());
    ea * d.rho_plus + eb * d.rho_minus + ea * eb * (d.rho_plus * d.rho_minus)
}

pub fn omega_of_lambda<T: Real>(lambda: Complex<T>, d: &DensityPair<T>) -> Complex<T> {
    omega_ab(lambda.exp(), (-lambda).exp(), d)
}

pub fn omega_of_lambda_real<T: Real>(lambda: T, d: &DensityPair<T>) -> T {
    let (ea, eb) = (lambda.exp_m1(), (-lambda).exp_m1());
    d.rho_plus * ea + d.rho_minus * eb + d.rho_plus * d.rho_minus * ea * eb
}

/// Initial-condition factor `M_0`, again through `a = e^lambda`, `b = e^{-lambda}`.
#[inline]
fn m0_ab<T: Real>(x: i64, a: Complex<T>, b: Complex<T>, d: &DensityPair<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    if x >= 0 {
        (one + (a - T::one()) * d.rho_plus).powi(x as i32)
    } else {
        (one + (b - T::one()) * d.rho_minus).powi((-x) as i32)
    }
}

pub fn m0_factor<T: Real>(x: i64, lambda: Complex<T>, d: &DensityPair<T>) -> Complex<T> {
    m0_ab(x, lambda.exp(), (-lambda).exp(), d)
}

/// Settings for the `z = e^{-lambda}` contour used by the pmf and the tracer CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct ZContourOptions {
    pub radii: Vec<f64>,
    pub start_nodes: usize,
    pub node_cap: usize,
    pub tol: f64,
    /// Allowed excursion outside `[0, 1]` before clipping.
    pub clip_slack: f64,
}

impl Default for ZContourOptions {
    fn default() -> Self {
        ZContourOptions { radii: vec![0.5, 0.7, 0.3], start_nodes: 64, node_cap: 4096, tol: 1e-13, clip_slack: 1e-8 }
    }
}

/// `<e^{lambda N(x,t)}>` at fixed `(x, t, densities)`, with the kernel
/// spectrum computed once.
#[derive(Debug, Clone)]
pub struct GfEvaluator<T> {
    pub x: i64,
    pub t: T,
    pub density: DensityPair<T>,
    pub spectrum: Arc<BesselSpectrum<T>>,
}

impl<T: LinalgScalar> GfEvaluator<T> {
    pub fn new(x: i64, t: T, density: DensityPair<T>) -> Result<Self> {
        if !(t >= T::zero()) || !t.is_finite() {
            return Err(KernelError::InvalidArgument(format!("time must be >= 0, got {t}")));
        }
        let spectrum = Arc::new(BesselSpectrum::new(x.unsigned_abs(), t));
        Ok(GfEvaluator { x, t, density, spectrum })
    }

    /// Reuse a spectrum computed for `|x|` and `t`.
    pub fn with_spectrum(x: i64, density: DensityPair<T>, spectrum: Arc<BesselSpectrum<T>>) -> Result<Self> {
        if spectrum.x != x.unsigned_abs() {
            return Err(KernelError::InvalidArgument(format!(
                "spectrum built for |x| = {}, asked for x = {x}",
                spectrum.x
            )));
        }
        Ok(GfEvaluator { x, t: spectrum.t, density, spectrum })
    }

    pub fn omega(&self, lambda: Complex<T>) -> Complex<T> {
        omega_of_lambda(lambda, &self.density)
    }

    pub fn gf(&self, lambda: Complex<T>) -> Complex<T> {
        let (a, b) = (lambda.exp(), (-lambda).exp());
        self.spectrum.det(omega_ab(a, b, &self.density)) * m0_ab(self.x, a, b, &self.density)
    }

    /// Generating function as a function of `z = e^{-lambda}`.
    pub fn gf_z(&self, z: Complex<T>) -> Complex<T> {
        let a = z.inv();
        self.spectrum.det(omega_ab(a, z, &self.density)) * m0_ab(self.x, a, z, &self.density)
    }

    /// `log <e^{lambda N}>` for real `lambda`, summed factor by factor.
    pub fn log_gf(&self, lambda: T) -> T {
        let d = &self.density;
        let w = omega_of_lambda_real(lambda, d);
        let drift = if self.x >= 0 {
            T::from_i64(self.x).unwrap() * (d.rho_plus * lambda.exp_m1()).ln_1p()
        } else {
            T::from_i64(-self.x).unwrap() * (d.rho_minus * (-lambda).exp_m1()).ln_1p()
        };
        self.spectrum.log_det_real(w) + drift
    }

    /// `P[N(x,t) = n]` by Cauchy's formula on `|z| = r`.
    pub fn pmf(&self, n: i64) -> Result<Evaluated<T, T>> {
        self.pmf_with(n, &ZContourOptions::default())
    }

    pub fn pmf_with(&self, n: i64, opts: &ZContourOptions) -> Result<Evaluated<T, T>> {
        self.probability_integral(opts, &format!("P[N = {n}]"), Some(n), |z| {
            // z^{n-1} GF(z) dz/(2 pi i) with the weight already carrying z
            z.powi((n - 1) as i32) * self.gf_z(z)
        })
    }

    /// `P[X_t <= x] = sum_{n >= 1} P[N(x,t) = n]`.
    pub fn tagged_cdf(&self) -> Result<Evaluated<T, T>> {
        self.tagged_cdf_with(&ZContourOptions::default())
    }

    pub fn tagged_cdf_with(&self, opts: &ZContourOptions) -> Result<Evaluated<T, T>> {
        if !(self.density.rho_plus > T::zero()) {
            return Err(KernelError::InvalidArgument("tracer distribution needs rho_plus > 0".into()));
        }
        let one = Complex::new(T::one(), T::zero());
        self.probability_integral(opts, "P[X_t <= x]", None, |z| self.gf_z(z) / (one - z))
    }

    fn probability_integral<F>(&self, opts: &ZContourOptions, what: &str, saddle_n: Option<i64>, f: F) -> Result<Evaluated<T, T>>
    where
        F: Fn(Complex<T>) -> Complex<T>,
    {
        let slack = T::lit(opts.clip_slack);
        let mut radii = opts.radii.clone();
        if let Some(n) = saddle_n {
            radii.push(self.saddle_radius(n));
        }
        let mut last = String::new();
        for &r in &radii {
            let c = make_contour(T::lit(r), opts.start_nodes)?;
            // largest |z f(z)| seen, to bound the cancellation error of the sum
            let scale = Cell::new(T::zero());
            let g = |z: Complex<T>| {
                let v = f(z);
                let m = (v * z).norm();
                if m > scale.get() {
                    scale.set(m);
                }
                v
            };
            let q = match integrate_1d_capped(g, &c, T::lit(opts.tol).max(T::epsilon() * T::lit(100.0)), opts.node_cap) {
                Ok(q) => q,
                Err(e) => {
                    last = format!("radius {r}: {e}");
                    continue;
                }
            };
            let v = q.value;
            let roundoff = scale.get() * T::epsilon() * T::lit(64.0);
            let in_range = v.re >= -slack && v.re <= T::one() + slack;
            if q.converged && in_range && v.im.abs() <= T::lit(1e-9) && roundoff <= T::lit(1e-10).max(T::epsilon() * T::lit(1e4)) {
                let value = v.re.max(T::zero()).min(T::one());
                return Ok(Evaluated { value, est_error: q.est_error + roundoff, n_nodes: q.n_nodes_used, converged: true });
            }
            last = format!(
                "radius {r}: value {} + {}i, converged {}, est_error {}, roundoff {}",
                v.re, v.im, q.converged, q.est_error, roundoff
            );
        }
        Err(KernelError::Consistency(format!("{what} failed on every radius ({last})")))
    }

    /// Radius minimising `r^n <z^{-N}>` on the positive axis, i.e. the
    /// Chernoff point `lambda* = argmin (log GF(lambda) - n lambda)`, `r = e^{-lambda*}`.
    fn saddle_radius(&self, n: i64) -> f64 {
        let nf = T::from_i64(n).unwrap();
        let obj = |l: f64| {
            let lt = T::lit(l);
            (self.log_gf(lt) - nf * lt).as_f64()
        };
        let (mut a, mut b) = (-30.0f64, 30.0f64);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let (mut fc, mut fd) = (obj(c), obj(d));
        for _ in 0..120 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = obj(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = obj(d);
            }
        }
        (-(0.5 * (a + b))).exp()
    }
}

/// `<e^{lambda N(x,t)}>`; builds the spectrum for this call only.
pub fn gf_height<T: LinalgScalar>(x: i64, t: T, lambda: Complex<T>, d: &DensityPair<T>) -> Result<Evaluated<Complex<T>, T>> {
    let g = GfEvaluator::new(x, t, *d)?;
    let value = g.gf(lambda);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(KernelError::Numerical(format!("generating function not finite at lambda = {lambda}")));
    }
    Ok(Evaluated { value, est_error: g.spectrum.est_error, n_nodes: g.spectrum.n_nodes, converged: true })
}

pub fn height_pmf<T: LinalgScalar>(x: i64, t: T, d: &DensityPair<T>, n: i64) -> Result<Evaluated<T, T>> {
    GfEvaluator::new(x, t, *d)?.pmf(n)
}

pub fn tagged_cdf<T: LinalgScalar>(x: i64, t: T, d: &DensityPair<T>) -> Result<Evaluated<T, T>> {
    GfEvaluator::new(x, t, *d)?.tagged_cdf()
}
