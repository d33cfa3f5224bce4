use moment_cumulant_algebra::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

#[test]
fn partition_counts() {
    let p: Vec<usize> = (1..=12).map(|n| partitions(n).len()).collect();
    assert_eq!(p, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    for n in 1..=12 {
        for part in partitions(n) {
            assert_eq!(part.n(), n);
        }
    }
    // Bell numbers: sum over shapes of the number of set partitions
    let bell: Vec<f64> = (1..=8).map(|n| partitions(n).iter().map(|p| p.set_partition_count::<f64>()).sum()).collect();
    assert_eq!(bell, vec![1.0, 2.0, 5.0, 15.0, 52.0, 203.0, 877.0, 4140.0]);
}

fn coeff_of(n: usize, parts: &[usize], signed: bool) -> i64 {
    let mut m = vec![0; n];
    for &p in parts {
        m[p - 1] += 1;
    }
    let part = Partition { multiplicities: m };
    let v: f64 = if signed { part.signed_count() } else { part.set_partition_count() };
    v as i64
}

#[test]
fn moment_table_coefficients() {
    assert_eq!(coeff_of(2, &[1, 1], false), 1);
    assert_eq!(coeff_of(2, &[2], false), 1);
    assert_eq!(coeff_of(3, &[2, 1], false), 3);
    assert_eq!(coeff_of(4, &[2, 1, 1], false), 6);
    assert_eq!(coeff_of(4, &[2, 2], false), 3);
    assert_eq!(coeff_of(4, &[3, 1], false), 4);
    assert_eq!(coeff_of(5, &[2, 1, 1, 1], false), 10);
    assert_eq!(coeff_of(5, &[2, 2, 1], false), 15);
    assert_eq!(coeff_of(5, &[3, 1, 1], false), 10);
    assert_eq!(coeff_of(5, &[3, 2], false), 10);
    assert_eq!(coeff_of(5, &[4, 1], false), 5);
    assert_eq!(coeff_of(5, &[5], false), 1);
}

#[test]
fn cumulant_table_coefficients() {
    assert_eq!(coeff_of(2, &[1, 1], true), -1);
    assert_eq!(coeff_of(3, &[2, 1], true), -3);
    assert_eq!(coeff_of(3, &[1, 1, 1], true), 2);
    assert_eq!(coeff_of(4, &[3, 1], true), -4);
    assert_eq!(coeff_of(4, &[2, 2], true), -3);
    // m_2 m_1^2 carries 12
    assert_eq!(coeff_of(4, &[2, 1, 1], true), 12);
    assert_eq!(coeff_of(4, &[1, 1, 1, 1], true), -6);
    assert_eq!(coeff_of(5, &[4, 1], true), -5);
    assert_eq!(coeff_of(5, &[3, 2], true), -10);
    assert_eq!(coeff_of(5, &[3, 1, 1], true), 20);
    assert_eq!(coeff_of(5, &[2, 2, 1], true), 30);
    assert_eq!(coeff_of(5, &[2, 1, 1, 1], true), -60);
    assert_eq!(coeff_of(5, &[1, 1, 1, 1, 1], true), 24);
}

#[test]
fn conversions_match_closed_forms() {
    let c = [q(3, 7), q(-2, 5), q(1, 3), q(5, 11)];
    let m = moments_from_cumulants(&c).unwrap();
    assert_eq!(m[1], c[0].clone() * c[0].clone() + c[1].clone());
    let back = cumulants_from_moments(&m).unwrap();
    assert_eq!(back, c.to_vec());
    let (m1, m2, m3, m4) = (m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone());
    let c4 = m4 - q(4, 1) * m3 * m1.clone() - q(3, 1) * m2.clone() * m2.clone() + q(12, 1) * m2 * m1.clone() * m1.clone()
        - q(6, 1) * m1.clone() * m1.clone() * m1.clone() * m1;
    assert_eq!(c4, c[3]);
}

#[test]
fn conversion_order_cap() {
    let long = vec![1.0f64; 13];
    assert!(matches!(moments_from_cumulants(&long), Err(SeriesError::OrderTooLarge { .. })));
}

#[test]
fn series_exp_log_and_powers() {
    // e^{2 lambda} = (e^lambda)^2, log e^{a lambda} = a lambda
    let e1 = ExactSeries::exp_linear(BigRational::one(), 10);
    assert_eq!(e1.powi(2), ExactSeries::exp_linear(q(2, 1), 10));
    let l = ExactSeries::exp_linear(q(3, 2), 10).log().unwrap();
    assert_eq!(l.coeffs[1], q(3, 2));
    assert!(l.coeffs[2..].iter().all(|c| c.is_zero()));
    let lin = ExactSeries::from_coeffs(vec![BigRational::zero(), q(-1, 3)], 10);
    assert_eq!(lin.exp().unwrap(), ExactSeries::exp_linear(q(-1, 3), 10));
    assert!(e1.exp().is_err());
    assert!(lin.log().is_err());
}

#[test]
fn series_of_named_functions() {
    let s = series_from_function(SeriesKind::Omega, &0.0f64, &0.3, 6).unwrap();
    assert!(close(s.coeffs[1], 0.3, 1e-15));
    let (rm, rp) = (q(1, 5), q(2, 3));
    let s = series_from_function(SeriesKind::Omega, &rm, &rp, 8).unwrap();
    let r_plus = rp.clone() * (BigRational::one() - rm.clone());
    let r_minus = rm.clone() * (BigRational::one() - rp.clone());
    assert_eq!(s.coeffs[0], BigRational::zero());
    for n in 1..=8 {
        let want = if n % 2 == 1 { r_plus.clone() - r_minus.clone() } else { r_plus.clone() + r_minus.clone() };
        assert_eq!(s.coeffs[n], want);
    }
    let m0 = series_from_function(SeriesKind::M0 { x: 1 }, &rm, &rp, 8).unwrap();
    assert_eq!(m0.coeffs[0], BigRational::one());
    assert!(m0.coeffs[1..].iter().all(|c| *c == rp));
    let e = series_from_function(SeriesKind::ExpLambda, &rm, &rp, 5).unwrap();
    assert!(e.coeffs.iter().all(|c| c.is_one()));
    assert!(series_from_function(SeriesKind::Omega, &rm, &rp, 13).is_err());
    assert!("sinh".parse::<SeriesKind>().is_err());
    assert_eq!("M0:3".parse::<SeriesKind>().unwrap(), SeriesKind::M0 { x: 3 });
}

#[test]
fn m_coefficients() {
    let (rm, rp) = (0.2f64, 0.7f64);
    assert_eq!(m_coeff(0, 0, 3, &rm, &rp).unwrap(), 1.0);
    let want = rp * (1.0 - rm) - rm * (1.0 - rp);
    assert!(close(m_coeff(1, 1, 3, &rm, &rp).unwrap(), want, 1e-15));
    assert!(close(m_coeff(1, 0, 3, &rm, &rp).unwrap(), 3.0 * rp, 1e-15));
    assert!(m_coeff(1, 2, 0, &rm, &rp).is_err());
}

#[test]
fn alpha_small_cases() {
    let (a, b) = (q(2, 7), q(1, 9));
    assert_eq!(alpha(1, 1, &a, &b).unwrap(), a.clone() - b.clone());
    assert_eq!(alpha(2, 2, &a, &b).unwrap(), (a.clone() - b.clone()) * (a.clone() - b.clone()));
    assert_eq!(alpha(2, 1, &a, &b).unwrap(), a.clone() + b.clone());
    assert!(alpha(3, 0, &a, &b).is_err());
    assert!(alpha(3, 4, &a, &b).is_err());
}

#[test]
fn alpha_reproduces_log_series_exactly() {
    // cumulants of 1 + a(e^l - 1) + b(e^{-l} - 1)
    let (a, b) = (q(3, 10), q(1, 8));
    let order = 8;
    let one = ExactSeries::one(order);
    let ep = ExactSeries::exp_linear(BigRational::one(), order).sub(&one);
    let em = ExactSeries::exp_linear(-BigRational::one(), order).sub(&one);
    let k = one.add(&ep.scale(&a)).add(&em.scale(&b)).log().unwrap();
    for n in 1..=order {
        let mut c = BigRational::zero();
        for l in 1..=n {
            let w = factorial::<BigRational>(l - 1);
            let w = if l % 2 == 0 { -w } else { w };
            c = c + w * alpha(n, l, &a, &b).unwrap();
        }
        assert_eq!(c, k.coeffs[n], "n = {n}");
    }
}

#[test]
fn q_binomial_values() {
    for n in 0..=10 {
        for k in 0..=n {
            assert_eq!(q_binomial(n, k, &1.0f64).unwrap(), binomial::<f64>(n, k));
        }
    }
    assert!(close(q_binomial(2, 1, &0.5f64).unwrap(), 1.5, 1e-15));
    let tau = 0.7f64;
    let lhs = q_subset_sum(4, 2, &tau).unwrap();
    assert!(close(lhs, q_binomial(4, 2, &tau).unwrap() * tau, 1e-14));
    let tq = q(7, 10);
    for n in 0..=10 {
        for k in 0..=n {
            let rhs = q_binomial(n, k, &tq).unwrap() * moment_cumulant_algebra::coefficient::pow(&tq, k * (k.max(1) - 1) / 2);
            assert_eq!(q_subset_sum(n, k, &tq).unwrap(), rhs, "n = {n}, k = {k}");
        }
    }
    assert!(q_binomial(21, 3, &tau).is_err());
}

#[test]
fn permutation_signs() {
    let perms = signed_permutations(4);
    assert_eq!(perms.len(), 24);
    assert_eq!(perms.iter().map(|p| p.1).sum::<i32>(), 0);
    for (p, s) in &perms {
        let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        assert_eq!(*s, if inv % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn b4_identity() {
    let (l, r) = b4_sides(&[1.0f64, 3.0], &0.37);
    assert!(close(l, -4.0, 1e-14) && close(r, -4.0, 1e-14));
    let (l, r) = b4_sides(&[2.5f64], &0.37);
    assert_eq!((l, r), (1.0, 1.0));
    let t = [0.31, -1.7, 2.2, 0.05];
    assert!(identity_b4_check(&t, &[0.123, -2.5]).unwrap());
    let (l1, _) = b4_sides(&t, &0.123);
    let (l2, _) = b4_sides(&t, &-2.5);
    assert!(close(l1, l2, 1e-10));
    assert!(identity_b4_check(&[0.1, 0.4, -0.3, 0.9, 1.7, -2.2], &[0.7]).unwrap());
    assert!(matches!(identity_b4_check(&[1.0, 1.0], &[0.5]), Err(SeriesError::Degenerate(_))));
    let xi = [q(1, 10), q(-1, 5), q(1, 4)];
    let (l, r) = b4_xi_sides(&xi);
    assert_eq!(l, r);
}

#[test]
fn b5_identity() {
    use num_complex::Complex;
    let c = |re: f64, im: f64| Complex::new(re, im);
    assert!(identity_b5_check(&[c(0.2, -0.1)]).unwrap());
    assert!(identity_b5_check(&[c(0.1, 0.0), c(0.0, 0.2)]).unwrap());
    assert!(identity_b5_check(&[c(0.13, 0.05), c(-0.21, 0.1), c(0.02, -0.27)]).unwrap());
    assert!(identity_b5_check(&[c(0.13, 0.05), c(-0.21, 0.1), c(0.02, -0.27), c(0.25, 0.11), c(-0.05, -0.06)]).unwrap());
    let (l, r) = b5_sides(&[c(0.1, 0.0), c(0.0, 0.2)]);
    assert!((l - r).norm() <= 1e-12 * r.norm());
    assert!(matches!(identity_b5_check(&[c(0.1, 0.0), c(0.1, 0.0)]), Err(SeriesError::Degenerate(_))));
    assert!(identity_b5_check(&[c(1.0, 0.0), c(0.2, 0.0)]).is_err());
}

#[test]
fn exact_det_small() {
    let m = vec![vec![q(0, 1), q(1, 1)], vec![q(2, 1), q(3, 1)]];
    assert_eq!(exact_det(m), q(-2, 1));
    let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
    assert_eq!(exact_det(m), q(0, 1));
}

#[test]
fn float_series_agrees_with_exact() {
    let (rm, rp) = (0.25f64, 0.6f64);
    let f = m_coeff_table(6, 2, &rm, &rp).unwrap();
    let e = m_coeff_table(6, 2, &q(1, 4), &q(3, 5)).unwrap();
    for k in 0..=6 {
        for n in 0..=6 {
            assert!(close(f[k].coeffs[n], e[k].coeffs[n].to_f64(), 1e-13));
        }
    }
    let s32 = Series32::exp_linear(0.5f32, 6).log().unwrap();
    assert!((s32.coeffs[1] - 0.5).abs() < 1e-6);
}
