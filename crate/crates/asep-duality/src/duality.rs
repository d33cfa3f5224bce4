//! Residue expansions of `<tau^{N(x1,t)} tau^{N(x2,t)}>` and `<tau^{n N(x,t)}>`
//! for `n = 1, 2`.

use contour_quad::{integrate_1d_capped, integrate_nd_with, make_contour, Complex, NdOptions, Real};

use crate::error::{DualityError, Result};
use crate::params::AsepParams;

const START_NODES: usize = 32;
const NODE_CAP_1D: usize = 1 << 15;
const NODE_CAP_2D: usize = 1 << 10;

fn c<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

fn pole_check<T: Real>(z: Complex<T>, a: &AsepParams<T>) -> Result<()> {
    let tiny = T::epsilon().sqrt();
    if (z + T::one()).norm() < tiny || (z + a.tau()).norm() < tiny {
        return Err(DualityError::Domain(format!("z = {z} is at a pole of gamma")));
    }
    Ok(())
}

/// `gamma(z) = -q (1-tau)^2 z / ((1+z)(tau+z))`.
pub fn gamma_z<T: Real>(z: Complex<T>, a: &AsepParams<T>) -> Result<Complex<T>> {
    pole_check(z, a)?;
    Ok(gamma_raw(z, a))
}

fn gamma_raw<T: Real>(z: Complex<T>, a: &AsepParams<T>) -> Complex<T> {
    let tau = a.tau();
    let one_m = T::one() - tau;
    -(z * (a.q * one_m * one_m)) / ((z + T::one()) * (z + tau))
}

/// `p (1+z/tau)/(1+z) + q (1+z)/(1+z/tau) - (p+q)`.
pub fn gamma_alt<T: Real>(z: Complex<T>, a: &AsepParams<T>) -> Result<Complex<T>> {
    pole_check(z, a)?;
    let u = (z / a.tau() + T::one()) / (z + T::one());
    Ok(u * a.p + u.inv() * a.q - c(a.p + a.q))
}

/// `((1+z)/(1+z/tau))^x e^{gamma(z) t}`.
fn h<T: Real>(x: i64, t: T, z: Complex<T>, a: &AsepParams<T>) -> Complex<T> {
    let ratio = (z + T::one()) / (z / a.tau() + T::one());
    ratio.powi(x as i32) * (gamma_raw(z, a) * t).exp()
}

/// `F_{x,t}(z) = h(z) / ((1 - z/(tau theta_+)) (z - theta_-))`.
pub fn f_xt<T: Real>(x: i64, t: T, z: Complex<T>, a: &AsepParams<T>) -> Complex<T> {
    let tp = a.tau() * a.theta_plus();
    h(x, t, z, a) / ((c(T::one()) - z / tp) * (z - a.theta_minus()))
}

/// `e^{Lambda_i} = ((1+tau^i theta_+)/(1+tau^{i-1} theta_+))^x e^{gamma(tau^i theta_+) t}`.
pub fn lambda_exp<T: Real>(i: u32, x: i64, t: T, a: &AsepParams<T>) -> T {
    let z = a.tau().powi(i as i32) * a.theta_plus();
    h(x, t, c(z), a).re
}

/// Terms of a residue expansion and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueExpansion<T> {
    pub order: usize,
    pub x: (i64, i64),
    pub t: T,
    /// `e^{Lambda_i}` factors entering the pure-residue term.
    pub lambda: Vec<T>,
    /// Contour integrals around `-1`, in the order they appear.
    pub integrals: Vec<Complex<T>>,
    pub est_error: T,
    pub value: Complex<T>,
}

impl<T: Real> ResidueExpansion<T> {
    pub fn real_value(&self) -> T {
        self.value.re
    }
}

struct Integral<T> {
    value: Complex<T>,
    err: T,
}

fn around_minus_one<T: Real, F>(a: &AsepParams<T>, f: F) -> Result<Integral<T>>
where
    F: Fn(Complex<T>) -> Complex<T>,
{
    let contour = make_contour(a.radius(), START_NODES)?;
    let scale = std::cell::Cell::new(T::zero());
    let g = |w: Complex<T>| {
        let v = f(w - T::one());
        scale.set(scale.get().max((v * w).norm()));
        v
    };
    let tol = T::epsilon() * T::lit(64.0);
    let q = integrate_1d_capped(g, &contour, tol, NODE_CAP_1D)?;
    let floor = scale.get() * T::epsilon() * T::lit(64.0);
    if !q.converged && q.est_error > floor * T::lit(100.0) {
        return Err(DualityError::NotConverged(format!("single integral, error {}", q.est_error)));
    }
    Ok(Integral { value: q.value, err: q.est_error.max(floor) })
}

fn around_minus_one_2d<T: Real, F>(a: &AsepParams<T>, f: F) -> Result<Integral<T>>
where
    F: Fn(Complex<T>, Complex<T>) -> Complex<T>,
{
    let contour = make_contour(a.radius(), START_NODES)?;
    let scale = std::cell::Cell::new(T::zero());
    let g = |w: &[Complex<T>]| {
        let v = f(w[0] - T::one(), w[1] - T::one());
        scale.set(scale.get().max((v * w[0] * w[1]).norm()));
        v
    };
    let opts = NdOptions { tol: T::epsilon() * T::lit(64.0), max_nodes_per_axis: NODE_CAP_2D, max_evaluations: 1 << 22 };
    let q = integrate_nd_with(g, &contour, 2, opts)?;
    let floor = scale.get() * T::epsilon() * T::lit(64.0);
    if !q.converged && q.est_error > floor * T::lit(100.0) {
        return Err(DualityError::NotConverged(format!("double integral, error {}", q.est_error)));
    }
    Ok(Integral { value: q.value, err: q.est_error.max(floor) })
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(DualityError::InvalidArgument(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// `<tau^{N(x,t)}> = e^{Lambda_1} - (1 - r_-/(tau r_+)) \oint_{-1} F_{x,t}`.
pub fn tau_moment1<T: Real>(x: i64, t: T, a: &AsepParams<T>) -> Result<ResidueExpansion<T>> {
    check_time(t)?;
    let l1 = lambda_exp(1, x, t, a);
    let i = around_minus_one(a, |z| f_xt(x, t, z, a))?;
    let pre = T::one() - a.r_ratio() / a.tau();
    let value = c(l1) - i.value * pre;
    Ok(ResidueExpansion {
        order: 1,
        x: (x, x),
        t,
        lambda: vec![l1],
        integrals: vec![i.value],
        est_error: i.err * pre.abs(),
        value,
    })
}

/// `<tau^{N(x1,t) + N(x2,t)}>` for `x1 <= x2`; `x1 = x2` is the second
/// tau-moment.
pub fn tau_correlation2<T: Real>(x1: i64, x2: i64, t: T, a: &AsepParams<T>) -> Result<ResidueExpansion<T>> {
    check_time(t)?;
    if x1 > x2 {
        return Err(DualityError::InvalidArgument(format!("need x1 <= x2, got {x1} > {x2}")));
    }
    let tau = a.tau();
    let tp = a.theta_plus();
    let tm = a.theta_minus();
    let ratio = a.r_ratio();
    let c1 = T::one() - ratio / tau;
    let c2 = T::one() - ratio / (tau * tau);
    let one = c(T::one());

    let l1_x2 = lambda_exp(1, x2, t, a);
    let l1_x1 = lambda_exp(1, x1, t, a);
    let l2_x1 = lambda_exp(2, x1, t, a);

    // z2 on the tau theta_+ pole, z1 around -1
    let ib = around_minus_one(a, |z| h(x1, t, z, a) / ((one - z / (tau * tau * tp)) * (z - tm)))?;
    // z1 on the tau theta_+ pole, z2 around -1
    let ia = around_minus_one(a, |z| h(x2, t, z, a) / ((one - z / tp) * (z - tm)))?;
    let idd = around_minus_one_2d(a, |z1, z2| (z1 - z2) / (z1 - z2 * tau) * f_xt(x1, t, z1, a) * f_xt(x2, t, z2, a))?;

    let value = c(l1_x2 * l2_x1) - ib.value * (l1_x2 * c2) - ia.value * (tau * l1_x1 * c2) + idd.value * (c1 * c2 * tau);
    let est_error = ib.err * (l1_x2 * c2).abs() + ia.err * (tau * l1_x1 * c2).abs() + idd.err * (c1 * c2 * tau).abs();
    Ok(ResidueExpansion {
        order: 2,
        x: (x1, x2),
        t,
        lambda: vec![l1_x2, l2_x1, l1_x1],
        integrals: vec![ib.value, ia.value, idd.value],
        est_error,
        value,
    })
}

/// `<tau^{n N(x,t)}>`, `n = 1, 2`.
pub fn tau_moment<T: Real>(n: usize, x: i64, t: T, a: &AsepParams<T>) -> Result<ResidueExpansion<T>> {
    match n {
        1 => tau_moment1(x, t, a),
        2 => tau_correlation2(x, x, t, a),
        _ => Err(DualityError::InvalidArgument(format!("tau-moments are available for n = 1, 2, got {n}"))),
    }
}

/// `<prod_i tau^{N(x_i, 0)}>` under the Bernoulli initial law, any number of
/// points: site `y >= 1` enters with weight `tau^{#{i: x_i >= y}}`, site
/// `y <= 0` with `tau^{-#{i: x_i < y}}`.
pub fn tau_correlation_initial<T: Real>(xs: &[i64], a: &AsepParams<T>) -> T {
    let tau = a.tau();
    let (rm, rp) = (a.density.rho_minus, a.density.rho_plus);
    let lo = xs.iter().copied().min().unwrap_or(0).min(0);
    let hi = xs.iter().copied().max().unwrap_or(0).max(0);
    let mut v = T::one();
    for y in lo + 1..=hi {
        if y >= 1 {
            let k = xs.iter().filter(|&&x| x >= y).count() as i32;
            v = v * (T::one() - rp + rp * tau.powi(k));
        } else {
            let k = xs.iter().filter(|&&x| x < y).count() as i32;
            v = v * (T::one() - rm + rm * tau.powi(-k));
        }
    }
    v
}
