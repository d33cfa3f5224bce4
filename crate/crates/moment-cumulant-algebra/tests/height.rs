use kernel_fredholm::{gf_height, DensityPair64};
use moment_cumulant_algebra::*;
use num_complex::Complex;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

fn binomial_moment(x: usize, p: f64, n: usize) -> f64 {
    (0..=x).map(|k| binomial::<f64>(x, k) * p.powi(k as i32) * (1.0 - p).powi((x - k) as i32) * (k as f64).powi(n as i32)).sum()
}

/// Central difference of order `n` at 0 with step `h`, error `O(h^2)`.
fn central(f: &dyn Fn(f64) -> f64, n: usize, h: f64) -> f64 {
    match n {
        1 => (f(h) - f(-h)) / (2.0 * h),
        2 => (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h),
        3 => (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h.powi(3)),
        4 => (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) / h.powi(4),
        _ => unreachable!(),
    }
}

/// Three-level Richardson in `h^2`.
fn derivative(f: &dyn Fn(f64) -> f64, n: usize, h: f64) -> f64 {
    let d: Vec<f64> = [h, h / 2.0, h / 4.0].iter().map(|&s| central(f, n, s)).collect();
    let r1 = [(4.0 * d[1] - d[0]) / 3.0, (4.0 * d[2] - d[1]) / 3.0];
    (16.0 * r1[1] - r1[0]) / 15.0
}

fn gf(x: i64, t: f64, d: DensityPair64) -> impl Fn(f64) -> f64 {
    move |l| gf_height(x, t, Complex::new(l, 0.0), &d).unwrap().value.re
}

#[test]
fn moments_at_time_zero_are_binomial() {
    let d = DensityPair64::new(0.3, 0.45).unwrap();
    for x in [0usize, 1, 3] {
        for n in 1..=4 {
            let m = moment_n(x as i64, 0.0, &d, n).unwrap();
            assert!(close(m.value, binomial_moment(x, 0.45, n), 1e-12), "x = {x}, n = {n}: {}", m.value);
        }
    }
}

#[test]
fn equilibrium_mean_at_origin_vanishes() {
    let d = DensityPair64::equilibrium(0.4).unwrap();
    let m = moment_n(0, 1.5, &d, 1).unwrap();
    assert!(m.value.abs() < 1e-12);
}

#[test]
fn moments_match_generating_function_derivatives() {
    let cases = [(0i64, 2.0, 0.5, 0.5), (1, 1.0, 0.2, 0.7), (2, 0.5, 0.6, 0.3), (-1, 1.0, 0.25, 0.5)];
    for &(x, t, rm, rp) in &cases {
        let d = DensityPair64::new(rm, rp).unwrap();
        let f = gf(x, t, d);
        for n in 1..=4 {
            let m = moment_n(x, t, &d, n).unwrap();
            let fd = derivative(&f, n, 0.1);
            assert!(close(m.value, fd, 1e-6), "x={x} t={t} n={n}: {} vs {fd}", m.value);
        }
        let ms = moments_spectral(x, t, &d, 4).unwrap();
        for n in 1..=4 {
            let m = moment_n(x, t, &d, n).unwrap();
            assert!(close(ms[n - 1], m.value, 1e-9), "spectral n={n}");
        }
    }
    assert!(moment_n(0, 1.0, &DensityPair64::equilibrium(0.5).unwrap(), 5).is_err());
}

#[test]
fn cumulants_at_time_zero_are_binomial() {
    let d = DensityPair64::new(0.1, 0.5).unwrap();
    assert!(close(cumulant_n_finite(2, 0.0, &d, 2).unwrap(), 0.5, 1e-14));
    assert!(close(cumulant_n_finite(2, 0.0, &d, 1).unwrap(), 1.0, 1e-14));
    // third cumulant of Binomial(x,p) is x p (1-p)(1-2p)
    let d = DensityPair64::new(0.1, 0.3).unwrap();
    assert!(close(cumulant_n_finite(5, 0.0, &d, 3).unwrap(), 5.0 * 0.3 * 0.7 * 0.4, 1e-13));
}

#[test]
fn mean_sign_against_log_derivative() {
    let d = DensityPair64::new(0.2, 0.6).unwrap();
    let t = 1.5;
    let lg = |l: f64| gf(0, t, d)(l).ln();
    let c1 = cumulant_n_finite(0, t, &d, 1).unwrap();
    assert!(close(c1, derivative(&lg, 1, 0.1), 1e-8));
    assert!(c1 > 0.0, "denser on the right: net flow to the left");
    let spec = kernel_fredholm::BesselSpectrum64::new(0, t);
    assert!(close(c1, (d.r_plus() - d.r_minus()) * spec.trace_power(1), 1e-14));
}

#[test]
fn equilibrium_odd_cumulants_vanish() {
    let d = DensityPair64::equilibrium(0.35).unwrap();
    for n in [1, 3, 5, 7] {
        assert!(cumulant_n_finite(0, 3.0, &d, n).unwrap().abs() < 1e-12, "n = {n}");
    }
    assert!(cumulant_n_finite(0, 3.0, &d, 2).unwrap() > 0.0);
}

#[test]
fn cumulants_agree_with_converted_moments() {
    for &(x, t, rm, rp) in &[(0i64, 2.0, 0.5, 0.5), (1, 1.0, 0.2, 0.7), (-2, 0.7, 0.4, 0.1)] {
        let d = DensityPair64::new(rm, rp).unwrap();
        let m: Vec<f64> = (1..=4).map(|n| moment_n(x, t, &d, n).unwrap().value).collect();
        let c = cumulants_from_moments(&m).unwrap();
        for n in 1..=4 {
            let k = cumulant_n_finite(x, t, &d, n).unwrap();
            assert!(close(k, c[n - 1], 1e-6), "x={x} t={t} n={n}: {k} vs {}", c[n - 1]);
        }
        let ms = moments_spectral(x, t, &d, 8).unwrap();
        let cs = cumulants_from_moments(&ms).unwrap();
        for n in 5..=8 {
            let k = cumulant_n_finite(x, t, &d, n).unwrap();
            assert!((k - cs[n - 1]).abs() < 1e-7 * (1.0 + ms[n - 1].abs()), "n={n}: {k} vs {}", cs[n - 1]);
        }
    }
}

#[test]
fn cumulant_order_limits() {
    let d = DensityPair64::equilibrium(0.5).unwrap();
    assert!(cumulant_n_finite(0, 1.0, &d, 0).is_err());
    assert!(cumulant_n_finite(0, 1.0, &d, 9).is_err());
    let spec = kernel_fredholm::BesselSpectrum64::new(2, 1.0);
    assert!(cumulant_n_with_spectrum(3, &d, 2, &spec).is_err());
    assert!(cumulant_n_with_spectrum(-2, &d, 2, &spec).is_ok());
}
