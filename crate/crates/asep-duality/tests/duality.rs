use asep_duality::*;
use contour_quad::Complex;
use kernel_fredholm::DensityPair;
use sep_simulator::{estimate_gf, estimate_observables, SimConfig};

fn params(p: f64, rm: f64, rp: f64) -> AsepParams<f64> {
    AsepParams::new(p, 1.0, DensityPair::new(rm, rp).unwrap()).unwrap()
}

#[test]
fn gamma_two_forms() {
    let a = params(0.6, 0.4, 0.3);
    let z = Complex::new(0.3, 0.1);
    let g1 = gamma_z(z, &a).unwrap();
    let g2 = gamma_alt(z, &a).unwrap();
    assert!((g1 - g2).norm() < 1e-12, "{g1} {g2}");
    assert_eq!(gamma_z(Complex::new(0.0, 0.0), &a).unwrap(), Complex::new(0.0, 0.0));
    assert!(gamma_z(Complex::new(-1.0, 0.0), &a).is_err());
    assert!(gamma_alt(Complex::new(-0.6, 0.0), &a).is_err());
}

#[test]
fn lambda_factors() {
    let a = params(0.7, 0.4, 0.3);
    let (tau, th) = (0.7f64, 0.3f64 / 0.7);
    for i in 1..=3u32 {
        let z = tau.powi(i as i32) * th;
        let g = gamma_z(Complex::new(z, 0.0), &a).unwrap().re;
        let want = ((1.0 + z) / (1.0 + z / tau)).powi(2) * (g * 1.5).exp();
        assert!((lambda_exp(i, 2, 1.5, &a) - want).abs() < 1e-14);
    }
}

#[test]
fn first_moment_at_time_zero() {
    let (rm, rp, tau) = (0.4, 0.3, 0.7);
    let a = params(tau, rm, rp);
    for x in -4..=5i64 {
        let got = tau_moment(1, x, 0.0, &a).unwrap();
        let want = if x >= 0 { (1.0 - rp + tau * rp).powi(x as i32) } else { (1.0 - rm + rm / tau).powi(-x as i32) };
        assert!((got.value.re - want).abs() < 1e-12 * want.max(1.0), "x = {x}: {} vs {want}", got.value);
        assert!(got.value.im.abs() < 1e-9);
    }
}

#[test]
fn second_order_at_time_zero() {
    let (rm, rp, tau) = (0.35, 0.55, 0.6);
    let a = params(tau, rm, rp);
    let plus = |k: i32| 1.0 - rp + rp * tau.powi(k);
    let minus = |k: i32| 1.0 - rm + rm / tau.powi(k);
    let cases: [(i64, i64, f64); 5] = [
        (1, 3, plus(2).powi(1) * plus(1).powi(2)),
        (2, 2, plus(2).powi(2)),
        (-2, 3, minus(1).powi(2) * plus(1).powi(3)),
        (-3, -1, minus(1).powi(2) * minus(2).powi(1)),
        (0, 0, 1.0),
    ];
    for (x1, x2, want) in cases {
        let got = tau_correlation2(x1, x2, 0.0, &a).unwrap();
        assert!((got.value.re - want).abs() < 1e-11 * want, "({x1},{x2}): {} vs {want}", got.value);
        assert!((tau_correlation_initial(&[x1, x2], &a) - want).abs() < 1e-14 * want);
    }
}

#[test]
fn occupation_identity_at_positive_time() {
    // tau <tau^{2N(x-1)}> + <tau^{2N(x)}> = (1 + tau) <tau^{N(x-1)+N(x)}>
    let a = params(0.75, 0.5, 0.4);
    let tau = a.tau();
    for (x, t) in [(1i64, 0.7), (0, 1.3), (-1, 0.5), (3, 2.0)] {
        let lo = tau_moment(2, x - 1, t, &a).unwrap().value.re;
        let hi = tau_moment(2, x, t, &a).unwrap().value.re;
        let mixed = tau_correlation2(x - 1, x, t, &a).unwrap().value.re;
        assert!((tau * lo + hi - (1.0 + tau) * mixed).abs() < 1e-10, "x = {x}, t = {t}");
    }
}

#[test]
fn first_moment_positive() {
    // tau^N > 0 always; it exceeds 1 once the height goes negative
    for (rm, rp) in [(0.2, 0.7), (0.6, 0.3), (0.5, 0.5)] {
        let a = params(0.5, rm, rp);
        for x in 0..4 {
            assert!(tau_moment(1, x, 0.0, &a).unwrap().value.re <= 1.0 + 1e-12);
            for t in [0.3, 1.0, 2.5] {
                let r = tau_moment(1, x, t, &a).unwrap();
                assert!(r.value.re > 0.0, "{r:?}");
                assert!(r.value.im.abs() < 1e-9);
            }
        }
    }
    let a = params(0.5, 0.6, 0.3);
    assert!(tau_moment(1, 0, 0.3, &a).unwrap().value.re > 1.0);
}

#[test]
fn coefficients_match_raw_form() {
    let (p, q, tau) = (0.6, 1.0, 0.6f64);
    for n in 1..=5u32 {
        let l = 1.0 - tau.powi(-(n as i32));
        let d2 = (1.0 - tau).powi(2);
        let tn = tau.powi(n as i32);
        let raw = [
            q * l * (-tau.powi(3) + tn) / d2,
            p * l * (tau * tau - tn) / d2,
            q * l * (tau * tau - tn) / d2,
            p * l * (-tau + tn) / d2,
        ];
        let got = evolution_coefficients(n, p, q).unwrap();
        for k in 0..4 {
            assert!((got[k] - raw[k]).abs() < 1e-12 * raw[k].abs().max(1.0), "n = {n}");
        }
    }
}

#[test]
fn coefficients_finite_at_symmetry() {
    let q = 1.3;
    let c1 = evolution_coefficients(1, q, q).unwrap();
    assert_eq!(c1, [-2.0 * q, q, q, 0.0]);
    for n in 1..=4u32 {
        let nf = n as f64;
        let c = evolution_coefficients(n, q, q).unwrap();
        let want = [-nf * (3.0 - nf) * q, -nf * (nf - 2.0) * q, -nf * (nf - 2.0) * q, nf * (nf - 1.0) * q];
        for k in 0..4 {
            assert!((c[k] - want[k]).abs() < 1e-12);
        }
        let near = evolution_coefficients(n, q * (1.0 - 1e-7), q).unwrap();
        for k in 0..4 {
            assert!((near[k] - want[k]).abs() < 1e-5);
        }
    }
}

#[test]
fn single_particle_master_equation() {
    let a = params(0.7, 0.4, 0.3);
    for (x, t) in [(1i64, 2.0), (0, 1.0), (-2, 1.5), (3, 0.5)] {
        let r = evolution_residual(1, x, t, &a, 1e-4).unwrap();
        assert!(r < 1e-6, "x = {x}, t = {t}: {r}");
    }
}

#[test]
fn second_moment_evolution_scales() {
    let a = params(0.8, 0.4, 0.3);
    let r1 = evolution_residual(2, 2, 1.0, &a, 2e-2).unwrap();
    let r2 = evolution_residual(2, 2, 1.0, &a, 1e-2).unwrap();
    let ratio = r1 / r2;
    assert!((ratio - 4.0).abs() < 0.4, "{r1} {r2} ratio {ratio}");
    assert!(evolution_residual(2, 2, 1.0, &a, 1e-4).unwrap() < 1e-7);
}

#[test]
fn symmetric_limit_first_and_second() {
    let d = DensityPair::new(0.5, 0.5).unwrap();
    let eps = [0.2, 0.1, 0.05];
    for n in 1..=2 {
        let r = symmetric_limit_check(n, 0, 1.0, &d, &eps).unwrap();
        assert!(r.monotone, "{r:?}");
        assert!(r.rel_error < 0.01, "{r:?}");
    }
    let d = DensityPair::new(0.3, 0.6).unwrap();
    let r = symmetric_limit_check(1, 3, 0.0, &d, &eps).unwrap();
    assert!((r.sep_value - 1.8f64).abs() < 1e-12);
    assert!(r.rel_error < 0.01, "{r:?}");
}

#[test]
fn domain_errors() {
    let d = DensityPair::new(0.4, 0.3).unwrap();
    assert!(AsepParams::new(1.0, 1.0, d).is_err());
    assert!(AsepParams::new(1.2, 1.0, d).is_err());
    assert!(AsepParams::new(0.5, 0.0, d).is_err());
    assert!(AsepParams::new(0.5, 1.0, DensityPair::new(0.4, 1.0).unwrap()).is_err());
    assert!(AsepParams::new(0.5, 1.0, DensityPair::new(0.4, 0.0).unwrap()).is_err());
    let a = params(0.5, 0.4, 0.3);
    assert!(tau_moment(3, 0, 1.0, &a).is_err());
    assert!(tau_correlation2(2, 1, 1.0, &a).is_err());
    assert!(evolution_residual(1, 0, 0.5, &a, 1.0).is_err());
    assert!(symmetric_limit_check(1, 0, 1.0, &d, &[0.5, 0.1]).is_err());
}

fn asep_config(t: f64, sites: Vec<i64>) -> SimConfig {
    SimConfig::new(0.4, 0.3, t).with_rates(0.7, 1.0).with_record_sites(sites).with_seed(2024)
}

#[test]
fn tau_moments_against_simulation() {
    let a = params(0.7, 0.4, 0.3);
    let cfg = asep_config(2.0, vec![1]);
    let ln_tau = 0.7f64.ln();
    for n in 1..=2usize {
        let exact = tau_moment(n, 1, 2.0, &a).unwrap().value.re;
        let mc = estimate_gf(&cfg, 1, n as f64 * ln_tau, 100_000).unwrap();
        assert!(mc.z_score(exact) < 3.0, "n = {n}: {mc:?} vs {exact}");
    }
}

#[test]
fn correlation_against_simulation() {
    let a = params(0.7, 0.4, 0.3);
    let cfg = asep_config(1.5, vec![-1, 2]);
    let tau = 0.7f64;
    let exact = tau_correlation2(-1, 2, 1.5, &a).unwrap().value.re;
    let k = 0;
    let mc = estimate_observables(&cfg, 50_000, |tr| {
        vec![tau.powi((tr.height(k, -1).unwrap() + tr.height(k, 2).unwrap()) as i32)]
    })
    .unwrap();
    assert!(mc[0].z_score(exact) < 3.0, "{:?} vs {exact}", mc[0]);
}
