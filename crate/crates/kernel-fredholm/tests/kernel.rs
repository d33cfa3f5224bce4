use contour_quad::{integrate_nd, make_contour, C64};
use kernel_fredholm::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// I_n(z) by its power series, fine for small z.
fn bessel_series(n: u32, z: f64) -> f64 {
    let mut term = (z / 2.0).powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>();
    let mut sum = 0.0;
    for k in 0..200 {
        if k > 0 {
            term *= (z / 2.0).powi(2) / (k as f64 * (k + n) as f64);
        }
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

#[test]
fn bessel_against_series_and_asymptotics() {
    for &(n, z) in &[(0u32, 1.0), (1, 1.0), (3, 0.5), (7, 2.0), (0, 10.0), (12, 9.0), (40, 3.0)] {
        let exact = bessel_series(n, z) * (-z as f64).exp();
        let got = scaled_bessel_i(n, z);
        assert!((got - exact).abs() <= 1e-14 * exact.max(1e-300) + 1e-300, "n={n} z={z}: {got} vs {exact}");
    }
    assert!((scaled_bessel_i(0, 1.0f64) - 0.46575960759364043).abs() < 1e-15);
    // large argument: e^{-z} I_0(z) ~ (1 + 1/(8z) + 9/(128 z^2) + 225/(3072 z^3)) / sqrt(2 pi z)
    let z = 5000.0f64;
    let asym = (1.0 + 1.0 / (8.0 * z) + 9.0 / (128.0 * z * z) + 225.0 / (3072.0 * z.powi(3)))
        / (2.0 * std::f64::consts::PI * z).sqrt();
    assert!((scaled_bessel_i(0, z) - asym).abs() < 1e-13 * asym);
    assert_eq!(scaled_bessel_i(3, 0.0f64), 0.0);
    assert_eq!(scaled_bessel_i(0, 0.0f64), 1.0);
    // tiny values underflow gracefully
    assert!(scaled_bessel_i(300, 1e-3f64) >= 0.0);
}

#[test]
fn kernel_examples() {
    let k = kernel_k(0, 0.0, c(0.2, 0.0), c(0.1, 0.0)).unwrap();
    assert!((k - c(1.0 / 0.82, 0.0)).norm() < 1e-15);
    let k = kernel_k(2, 0.0, c(0.0, 0.25), c(0.0, 0.0)).unwrap();
    assert!((k - c(-0.0625, 0.0)).norm() < 1e-16);
    let eps = 0.25 + 4.0 - 2.0;
    let k = kernel_k(0, 1.0, c(0.25, 0.0), c(0.25, 0.0)).unwrap();
    let want = f64::exp(eps) / (0.0625 + 1.0 - 0.5);
    assert!((k.re - want).abs() < 1e-13 * want && k.im.abs() < 1e-15);
    // pole at xi2 = 1/(2 - xi1)
    assert!(matches!(kernel_k(0, 1.0, c(0.5, 0.0), c(1.0 / 1.5, 0.0)), Err(KernelError::PoleProximity { .. })));
    assert!(KernelSpec::new(0, 1.0, make_contour(0.45, 16).unwrap()).is_err());
    assert!(KernelSpec::<f64>::standard(0, -1.0).is_err());
}

#[test]
fn traces_vanish_at_time_zero() {
    let spec = KernelSpec64::standard(0, 0.0).unwrap();
    for n in 1..=3 {
        assert!(trace_power_in(&spec, n).unwrap().value.abs() < 1e-14);
    }
}

#[test]
fn first_trace_bessel_oracle() {
    // I_1(0,1) = e^{-2} sum_k k I_k(2)
    let oracle: f64 = (1..60).map(|k| k as f64 * bessel_series(k, 2.0)).sum::<f64>() * (-2.0f64).exp();
    let spec = KernelSpec64::standard(0, 1.0).unwrap();
    let r = trace_power_in(&spec, 1).unwrap();
    assert!(r.converged);
    assert!((r.value - oracle).abs() < 1e-12, "{} vs {}", r.value, oracle);
    assert!((oracle - 0.5237776118026086).abs() < 1e-13);
    let s = BesselSpectrum64::new(0, 1.0);
    assert!((s.trace_power(1) - oracle).abs() < 1e-12);
}

#[test]
fn nystrom_traces_match_direct_quadrature() {
    for &(x, t) in &[(1i64, 0.5), (0, 1.0), (2, 0.3)] {
        let spec = KernelSpec64::standard(x, t).unwrap();
        let tr = trace_powers_in(&spec, 3).unwrap();
        let k = make_contour(0.25, 32).unwrap();
        for n in 1..=3usize {
            let direct = integrate_nd(
                |p: &[C64]| {
                    let mut acc = c(1.0, 0.0);
                    for i in 0..n {
                        acc *= kernel_k(x, t, p[i], p[(i + 1) % n]).unwrap();
                    }
                    acc
                },
                &k,
                n,
                1e-13,
            )
            .unwrap();
            assert!(direct.value.im.abs() < 1e-10);
            assert!((direct.value.re - tr[n - 1].value).abs() < 1e-8, "x={x} t={t} n={n}");
        }
    }
}

#[test]
fn spectrum_matches_contour_route() {
    for &(x, t) in &[(0i64, 1.0), (2, 0.5), (3, 2.0), (1, 3.0)] {
        let spec = KernelSpec64::standard(x, t).unwrap();
        let tr = trace_powers_in(&spec, 4).unwrap();
        let s = BesselSpectrum64::new(x as u64, t);
        for n in 1..=4u32 {
            let a = tr[n as usize - 1].value;
            let b = s.trace_power(n);
            assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "x={x} t={t} n={n}: {a} vs {b}");
        }
        for &w in &[c(0.3, 0.0), c(-0.4, 0.2), c(2.0, -1.0)] {
            let a = fredholm_det(&spec, w).unwrap();
            let b = s.det(w);
            assert!((a.value - b).norm() < 1e-9 * b.norm(), "x={x} t={t} w={w}");
        }
    }
}

#[test]
fn j_integrals() {
    let spec = KernelSpec64::standard(0, 0.0).unwrap();
    assert_eq!(multi_integral_jn(&spec, 0).unwrap().value, 1.0);
    assert!(multi_integral_jn(&spec, 1).unwrap().value.abs() < 1e-14);
    assert!(multi_integral_jn(&spec, 5).is_err());

    // J_2 = I_1^2 - I_2 from the determinant expansion, and the generic
    // two-dimensional integrator agrees with the tabulated sum
    let spec = KernelSpec64::standard(1, 0.5).unwrap();
    let j2 = multi_integral_jn(&spec, 2).unwrap();
    let tr = trace_powers_in(&spec, 2).unwrap();
    let expansion = tr[0].value.powi(2) - tr[1].value;
    assert!((j2.value - expansion).abs() < 1e-10, "{} vs {}", j2.value, expansion);
    let direct = integrate_nd(|p: &[C64]| jn_integrand(1, 0.5, p), &make_contour(0.25, 32).unwrap(), 2, 1e-12).unwrap();
    assert!((direct.value.re - j2.value).abs() < 1e-10);
    assert!(direct.value.im.abs() < 1e-10);
}

#[test]
fn fredholm_series_at_small_zeta() {
    let spec = KernelSpec64::standard(0, 1.0).unwrap();
    let zeta = 0.1f64;
    let mut series = 0.0;
    let mut fact = 1.0;
    for n in 0..=4usize {
        if n > 0 {
            fact *= n as f64;
        }
        series += zeta.powi(n as i32) * multi_integral_jn(&spec, n).unwrap().value / fact;
    }
    let det = fredholm_det(&spec, c(zeta, 0.0)).unwrap().value;
    assert!(det.im.abs() < 1e-12);
    assert!((det.re - series).abs() < 1e-5 * zeta.powi(5) * 1e3);
}

#[test]
fn fredholm_trivial_cases_and_trace_log() {
    let spec = KernelSpec64::standard(0, 1.0).unwrap();
    let d = fredholm_det(&spec, c(0.0, 0.0)).unwrap();
    assert!((d.value - c(1.0, 0.0)).norm() < 1e-15);
    let spec0 = KernelSpec64::standard(0, 0.0).unwrap();
    let d = fredholm_det(&spec0, c(0.7, -0.3)).unwrap();
    assert!((d.value - c(1.0, 0.0)).norm() < 1e-13);

    let w = 0.2f64;
    let tr = trace_powers_in(&spec, 8).unwrap();
    let mut log = 0.0;
    for (k, t) in tr.iter().enumerate() {
        let n = (k + 1) as i32;
        log += (-1.0f64).powi(n - 1) * w.powi(n) * t.value / n as f64;
    }
    // tail bounded by the next term with I_n <= I_1
    let tail = w.powi(9) * tr[0].value;
    let det = fredholm_det(&spec, c(w, 0.0)).unwrap().value.re;
    assert!((det - log.exp()).abs() <= tail + 1e-12);
}

#[test]
fn omega_identities() {
    let d = DensityPair64::new(0.7, 0.3).unwrap();
    assert!((d.r_plus() - 0.09).abs() < 1e-15 && (d.r_minus() - 0.49).abs() < 1e-15);
    assert!(((d.r_plus() - d.r_minus()) - (d.rho_plus - d.rho_minus)).abs() < 1e-15);
    let l = 0.5f64;
    let w = omega_of_lambda(c(l, 0.0), &d);
    let alt = d.r_plus() * (l.exp() - 1.0) + d.r_minus() * ((-l).exp() - 1.0);
    assert!((w.re - alt).abs() < 1e-15);
    let prod = (1.0 + d.rho_plus * (l.exp() - 1.0)) * (1.0 + d.rho_minus * ((-l).exp() - 1.0));
    assert!((1.0 + w.re - prod).abs() < 1e-14);
    assert_eq!(omega_of_lambda(c(0.0, 0.0), &d), c(0.0, 0.0));
    let d0 = DensityPair64::new(0.0, 0.4).unwrap();
    assert!((omega_of_lambda_real(0.3, &d0) - 0.4 * (0.3f64.exp() - 1.0)).abs() < 1e-15);
    assert!(DensityPair64::new(1.2, 0.3).is_err());
    assert!(d.swapped().theta_plus() - 0.7 / 0.3 < 1e-15);
    assert!(DensityPair64::new(0.2, 1.0).unwrap().theta_plus().is_infinite());
}

#[test]
fn generating_function_basics() {
    let d = DensityPair64::new(0.7, 0.3).unwrap();
    let g = gf_height(2, 5.0, c(0.0, 0.0), &d).unwrap();
    assert!((g.value - c(1.0, 0.0)).norm() < 1e-15);
    let dh = DensityPair64::new(0.2, 0.5).unwrap();
    let g = gf_height(3, 0.0, c(0.4, 0.0), &dh).unwrap().value;
    let want = (1.0 + 0.5 * (0.4f64.exp() - 1.0)).powi(3);
    assert!((g.re - want).abs() < 1e-14);
    let g = gf_height(-2, 0.0, c(0.4, 0.0), &dh).unwrap().value;
    let want = (1.0 + 0.2 * ((-0.4f64).exp() - 1.0)).powi(2);
    assert!((g.re - want).abs() < 1e-14);
}

#[test]
fn generating_function_symmetries() {
    let d = DensityPair64::new(0.6, 0.25).unwrap();
    for &x in &[0i64, 1, 3] {
        for &t in &[0.5, 2.0] {
            for &l in &[-1.0, -0.3, 0.4, 1.5] {
                let a = gf_height(-x, t, c(l, 0.0), &d).unwrap().value;
                let b = gf_height(x, t, c(-l, 0.0), &d.swapped()).unwrap().value;
                assert!((a - b).norm() < 1e-8 * a.norm());
                let p = gf_height(x, t, c(l, 0.0), &d).unwrap().value;
                let q = gf_height(x, t, c(-l, 0.0), &d.particle_hole()).unwrap().value;
                let want = (l * x as f64).exp() * q.re;
                assert!((p.re - want).abs() < 1e-8 * want, "x={x} t={t} l={l}");
            }
        }
    }
}

#[test]
fn generating_function_real_and_positive() {
    let d = DensityPair64::new(0.7, 0.3).unwrap();
    let g = GfEvaluator::new(2, 5.0, d).unwrap();
    for k in 0..=40 {
        let l = -2.0 + 0.1 * k as f64;
        let v = g.gf(c(l, 0.0));
        assert!(v.im.abs() < 1e-9 && v.re > 0.0);
        assert!((v.re.ln() - g.log_gf(l)).abs() < 1e-12);
    }
}

#[test]
fn pmf_examples() {
    let d = DensityPair64::new(0.5, 0.5).unwrap();
    let g = GfEvaluator::new(0, 0.0, d).unwrap();
    assert!((g.pmf(0).unwrap().value - 1.0).abs() < 1e-12);
    for n in [-2i64, -1, 1, 3] {
        assert!(g.pmf(n).unwrap().value.abs() < 1e-12);
    }
    let g = GfEvaluator::new(2, 0.0, d).unwrap();
    assert!((g.pmf(1).unwrap().value - 0.5).abs() < 1e-12);
    assert!((g.pmf(2).unwrap().value - 0.25).abs() < 1e-12);
}

#[test]
fn pmf_normalisation_and_cdf_consistency() {
    for &(x, t, rm, rp) in &[(0i64, 5.0, 0.5, 0.5), (2, 1.0, 0.7, 0.3), (-1, 10.0, 0.3, 0.6)] {
        let d = DensityPair64::new(rm, rp).unwrap();
        let g = GfEvaluator::new(x, t, d).unwrap();
        let probs: Vec<f64> = (-64..=64).map(|n| g.pmf(n).unwrap().value).collect();
        let total: f64 = probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-6, "total {total}");
        let tail: f64 = probs[65..].iter().sum();
        let cdf = g.tagged_cdf().unwrap().value;
        assert!((cdf - tail).abs() < 1e-6, "{cdf} vs {tail}");
        let mean: f64 = probs.iter().enumerate().map(|(k, p)| (k as f64 - 64.0) * p).sum();
        let h = 1e-4;
        let fd = (g.log_gf(h) - g.log_gf(-h)) / (2.0 * h);
        assert!((mean - fd).abs() < 1e-6);
    }
}

#[test]
fn tracer_cdf_properties() {
    let d = DensityPair64::new(0.5, 0.5).unwrap();
    let mut prev = 0.0;
    for x in -6..=12 {
        let v = tagged_cdf(x, 2.0, &d).unwrap().value;
        assert!(v + 1e-12 >= prev);
        prev = v;
    }
    let t = 4.0f64;
    let far = (8.0 * t.sqrt() + 20.0) as i64;
    assert!(tagged_cdf(far, t, &d).unwrap().value >= 1.0 - 1e-4);
    // right side fully occupied: the tracer sits on site 1
    let full = DensityPair64::new(0.4, 1.0).unwrap();
    assert!(tagged_cdf(0, 0.0, &full).unwrap().value < 1e-12);
    for x in 1..4 {
        assert!((tagged_cdf(x, 0.0, &full).unwrap().value - 1.0).abs() < 1e-12);
    }
    assert!(tagged_cdf(0, 1.0, &DensityPair64::new(0.5, 0.0).unwrap()).is_err());
}

#[test]
fn single_precision_route() {
    let s: BesselSpectrum<f32> = BesselSpectrum::new(0, 1.0f32);
    assert!((s.trace_power(1) - 0.5237776).abs() < 1e-5);
    let d = DensityPair::new(0.5f32, 0.5).unwrap();
    let g = GfEvaluator::new(1, 1.0f32, d).unwrap();
    assert!((g.gf(num_complex::Complex::new(0.0f32, 0.0)).re - 1.0).abs() < 1e-6);
}
