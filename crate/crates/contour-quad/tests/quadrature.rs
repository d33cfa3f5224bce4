use contour_quad::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn eight_nodes_are_roots_of_unity() {
    let k = make_contour(0.25, 8).unwrap();
    assert!((k.nodes[0] - c(0.25, 0.0)).norm() < 1e-16);
    assert!((k.nodes[2] - c(0.0, 0.25)).norm() < 1e-16);
    for z in &k.nodes {
        assert!((z.norm() - 0.25).abs() < 1e-14 * 0.25);
    }
}

#[test]
fn weight_sums() {
    let k = make_contour(0.25, 64).unwrap();
    let s: C64 = k.weights.iter().zip(&k.nodes).map(|(w, z)| w / z).sum();
    assert!((s - c(1.0, 0.0)).norm() < 1e-12);
    let s: C64 = k.weights.iter().zip(&k.nodes).map(|(w, z)| w * z).sum();
    assert!(s.norm() < 1e-15);
}

#[test]
fn rejects_bad_arguments() {
    assert!(matches!(make_contour(0.0, 16), Err(QuadError::InvalidArgument(_))));
    assert!(matches!(make_contour(-1.0, 16), Err(QuadError::InvalidArgument(_))));
    assert!(matches!(make_contour(0.25, 7), Err(QuadError::InvalidArgument(_))));
}

#[test]
fn residue_of_inverse() {
    let k = make_contour(0.25, 16).unwrap();
    let r = integrate_1d(|z: C64| z.inv(), &k, 1e-14).unwrap();
    assert!((r.value - c(1.0, 0.0)).norm() < 1e-14);
    assert!(r.converged && r.est_error >= 0.0);
    let r = integrate_1d(|z: C64| (c(1.0, 0.0) - z).powi(-2), &k, 1e-14).unwrap();
    assert!(r.value.norm() < 1e-14);
}

#[test]
fn bessel_i0_generating_function() {
    // (1/2 pi i) \oint e^{t(xi + 1/xi)} dxi / xi = I_0(2t) = sum_k t^{2k}/(k!)^2
    let t = 1.0_f64;
    let mut series = 0.0;
    let mut term = 1.0;
    for k in 0..40 {
        if k > 0 {
            term *= t * t / ((k * k) as f64);
        }
        series += term;
    }
    let k = make_contour(0.25, 16).unwrap();
    let r = integrate_1d(|z: C64| (t * (z + z.inv())).exp() / z, &k, 1e-13).unwrap();
    assert!(r.converged);
    assert!((r.value.re - series).abs() < 1e-12 * series, "{} vs {}", r.value.re, series);
    assert!(r.value.im.abs() < 1e-12);
}

#[test]
fn non_convergence_is_flagged_not_fatal() {
    let k = make_contour(0.25, 8).unwrap();
    let r = integrate_1d_capped(|z: C64| (30.0 / z).exp(), &k, 1e-300, 64).unwrap();
    assert!(!r.converged);
    assert_eq!(r.n_nodes_used, 64);
}

#[test]
fn non_finite_is_an_error() {
    let k = make_contour(1.0, 8).unwrap();
    let e = integrate_1d(|z: C64| (z - c(1.0, 0.0)).inv(), &k, 1e-10);
    assert!(matches!(e, Err(QuadError::Evaluation { index: 0, .. })));
}

#[test]
fn nd_consistency_and_products() {
    let k = make_contour(0.25, 16).unwrap();
    let g = |z: C64| (0.7 * z).exp() / (z * z) + z.inv();
    let one = integrate_1d(g, &k, 1e-13).unwrap();
    let nd = integrate_nd(|p: &[C64]| g(p[0]), &k, 1, 1e-13).unwrap();
    assert!((one.value - nd.value).norm() < 1e-13);
    let r = integrate_nd(|p: &[C64]| (p[0] * p[1]).inv(), &k, 2, 1e-13).unwrap();
    assert!((r.value - c(1.0, 0.0)).norm() < 1e-13);
    let r = integrate_nd(|p: &[C64]| (p[0] * p[1] * p[2] * p[3]).inv(), &make_contour(0.25, 8).unwrap(), 4, 1e-13)
        .unwrap();
    assert!((r.value - c(1.0, 0.0)).norm() < 1e-13);
    assert!(matches!(
        integrate_nd(|_p: &[C64]| c(1.0, 0.0), &k, 5, 1e-10),
        Err(QuadError::UnsupportedDimension(5))
    ));
}

#[test]
fn single_precision_contour() {
    let k: Contour32 = make_contour(0.25f32, 32).unwrap();
    let r = integrate_1d(|z: Complex<f32>| z.inv(), &k, 1e-5).unwrap();
    assert!((r.value.re - 1.0).abs() < 1e-5);
}

#[test]
fn doubling_error_decays_geometrically() {
    let k = make_contour(0.3, 8).unwrap();
    let f = |z: C64| (2.0 / z).exp() * (1.5 * z).cos();
    let mut prev = f64::INFINITY;
    let mut errs = vec![];
    let mut n = 8;
    let exact = integrate_1d(f, &make_contour(0.3, 512).unwrap(), 1e-15).unwrap().value;
    while n <= 64 {
        let v = make_contour(0.3, n).unwrap().sum(f).unwrap();
        let e = (v - exact).norm();
        errs.push(e);
        assert!(e <= prev + 1e-15);
        prev = e;
        n *= 2;
    }
    assert!(errs[2] < 1e-2 * errs[0]);
    let _ = k;
}

proptest! {
    #[test]
    fn rotation_invariance(shift in 0usize..64, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let k = make_contour(0.25, 64).unwrap();
        let f = |z: C64| (a * z).exp() / z + c(b, 0.0) / (z * z) + (b / z).exp();
        let base = k.sum(f).unwrap();
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..64 {
            let jj = (j + shift) % 64;
            acc += k.weights[jj] * f(k.nodes[jj]);
        }
        prop_assert!((acc - base).norm() < 1e-14 * (1.0 + base.norm()));
    }

    #[test]
    fn node_invariants(r in 1e-3f64..10.0, n in 8usize..300) {
        let k = make_contour(r, n).unwrap();
        for z in &k.nodes {
            prop_assert!((z.norm() - r).abs() <= 1e-14 * r);
        }
        let s: C64 = k.weights.iter().zip(&k.nodes).map(|(w, z)| w / z).sum();
        prop_assert!((s - c(1.0, 0.0)).norm() < 1e-12);
    }
}
