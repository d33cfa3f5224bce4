//! Partition sums, moment/cumulant conversion and a few finite identities.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::coefficient::{factorial, pow, Coefficient};
use crate::error::{Result, SeriesError};
use crate::partition::{partitions, Partition};
use crate::series::check_order;

/// `alpha_{n,l}(a,b) = sum_{nu |- n, l(nu) = l} n!/prod l_j! prod ((a + (-1)^j b)/j!)^{l_j}`.
pub fn alpha<C: Coefficient>(n: usize, l: usize, a: &C, b: &C) -> Result<C> {
    check_order(n)?;
    if l == 0 || l > n {
        return Err(SeriesError::InvalidArgument(format!("need 1 <= l <= n, got l = {l}, n = {n}")));
    }
    let vals: Vec<C> = (1..=n)
        .map(|j| {
            let s = if j % 2 == 0 { a.clone() + b.clone() } else { a.clone() - b.clone() };
            s / factorial::<C>(j)
        })
        .collect();
    let mut acc = C::zero();
    for p in partitions(n).iter().filter(|p| p.parts_count() == l) {
        let mut w = factorial::<C>(n);
        for &lj in &p.multiplicities {
            w = w / factorial::<C>(lj);
        }
        acc = acc + w * p.monomial(&vals);
    }
    Ok(acc)
}

/// `m_n = sum_{nu |- n} a_nu prod_j c_j^{l_j}`.
///
/// `c[k-1]` is the `k`-th cumulant; the output uses the same indexing.
pub fn moments_from_cumulants<C: Coefficient>(c: &[C]) -> Result<Vec<C>> {
    convert(c, |p| p.set_partition_count())
}

/// `c_n = sum_{nu |- n} (-1)^{l-1} (l-1)! a_nu prod_j m_j^{l_j}`.
pub fn cumulants_from_moments<C: Coefficient>(m: &[C]) -> Result<Vec<C>> {
    convert(m, |p| p.signed_count())
}

fn convert<C: Coefficient>(x: &[C], weight: impl Fn(&Partition) -> C) -> Result<Vec<C>> {
    check_order(x.len())?;
    Ok((1..=x.len())
        .map(|n| partitions(n).iter().fold(C::zero(), |acc, p| acc + weight(p) * p.monomial(x)))
        .collect())
}

/// Gaussian binomial `[n k]_tau = prod_{i=1}^k (1 - tau^{n-k+i}) / (1 - tau^i)`.
///
/// At `tau = 1` each factor is replaced by its limit `(n-k+i)/i`.
pub fn q_binomial<C: Coefficient>(n: usize, k: usize, tau: &C) -> Result<C> {
    if n > 20 {
        return Err(SeriesError::OrderTooLarge { order: n, cap: 20 });
    }
    if k > n {
        return Ok(C::zero());
    }
    let mut acc = C::one();
    for i in 1..=k {
        let num = geometric_sum(tau, n - k + i);
        let den = geometric_sum(tau, i);
        acc = acc * num / den;
    }
    Ok(acc)
}

/// `(1 - tau^m)/(1 - tau) = 1 + tau + ... + tau^{m-1}`, finite at `tau = 1`.
fn geometric_sum<C: Coefficient>(tau: &C, m: usize) -> C {
    let mut acc = C::zero();
    let mut p = C::one();
    for _ in 0..m {
        acc = acc + p.clone();
        p = p * tau.clone();
    }
    acc
}

/// `sum_{P subset {1..n}, |P| = k} tau^{||P|| - k}`, `||P||` the sum of the elements.
pub fn q_subset_sum<C: Coefficient>(n: usize, k: usize, tau: &C) -> Result<C> {
    if n > 20 {
        return Err(SeriesError::OrderTooLarge { order: n, cap: 20 });
    }
    let mut acc = C::zero();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let norm: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        acc = acc + pow(tau, norm - k);
    }
    Ok(acc)
}

/// Permutations of `0..n` with their signs (Heap's algorithm).
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), 1)];
    let mut c = vec![0usize; n];
    let mut sign = 1;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Both sides of `sum_s sgn s prod_{i<j} (a + t_{s(i)} - t_{s(j)}) = n! prod_{i<j} (t_i - t_j)`.
pub fn b4_sides<F: Num + Clone>(t: &[F], a: &F) -> (F, F) {
    let n = t.len();
    let mut lhs = F::zero();
    for (s, sg) in signed_permutations(n) {
        let mut prod = F::one();
        for i in 0..n {
            for j in i + 1..n {
                prod = prod * (a.clone() + t[s[i]].clone() - t[s[j]].clone());
            }
        }
        lhs = if sg > 0 { lhs + prod } else { lhs - prod };
    }
    let mut rhs = num_factorial::<F>(n);
    for i in 0..n {
        for j in i + 1..n {
            rhs = rhs * (t[i].clone() - t[j].clone());
        }
    }
    (lhs, rhs)
}

fn num_factorial<F: Num + Clone>(n: usize) -> F {
    let (mut acc, mut k) = (F::one(), F::zero());
    for _ in 0..n {
        k = k + F::one();
        acc = acc * k.clone();
    }
    acc
}

/// Same identity in the `xi` variables:
/// `sum_s sgn s prod_{i<j} (xi_{s(i)} xi_{s(j)} + 1 - 2 xi_{s(i)}) = n! prod_{i<j} (xi_j - xi_i)`.
pub fn b4_xi_sides<F: Num + Clone>(xi: &[F]) -> (F, F) {
    let n = xi.len();
    let two = F::one() + F::one();
    let mut lhs = F::zero();
    for (s, sg) in signed_permutations(n) {
        let mut prod = F::one();
        for i in 0..n {
            for j in i + 1..n {
                let (u, v) = (xi[s[i]].clone(), xi[s[j]].clone());
                prod = prod * (u.clone() * v + F::one() - two.clone() * u);
            }
        }
        lhs = if sg > 0 { lhs + prod } else { lhs - prod };
    }
    let mut rhs = num_factorial::<F>(n);
    for i in 0..n {
        for j in i + 1..n {
            rhs = rhs * (xi[j].clone() - xi[i].clone());
        }
    }
    (lhs, rhs)
}

/// Both sides of
/// `prod_k (1 - xi_k)^{-2} prod_{i != j} (xi_i - xi_j)/(xi_i xi_j + 1 - 2 xi_j) = det(1/(xi_i xi_j + 1 - 2 xi_i))`.
pub fn b5_sides<F: Num + Clone>(xi: &[F]) -> (F, F) {
    let n = xi.len();
    let two = F::one() + F::one();
    let den = |i: usize, j: usize| xi[i].clone() * xi[j].clone() + F::one() - two.clone() * xi[i].clone();
    let mut lhs = F::one();
    for k in 0..n {
        let d = F::one() - xi[k].clone();
        lhs = lhs / (d.clone() * d);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                lhs = lhs * (xi[i].clone() - xi[j].clone()) / den(j, i);
            }
        }
    }
    let m: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|j| F::one() / den(i, j)).collect()).collect();
    (lhs, exact_det(m))
}

/// Determinant by elimination with the first non-zero pivot; meant for exact fields.
pub fn exact_det<F: Num + Clone>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = F::zero() - det;
        }
        let piv = m[c][c].clone();
        det = det * piv.clone();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / piv.clone();
            for k in c..n {
                let v = m[c][k].clone() * f.clone();
                m[r][k] = m[r][k].clone() - v;
            }
        }
    }
    det
}

pub type GaussianRational = Complex<BigRational>;

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

fn exact_c(v: Complex<f64>) -> GaussianRational {
    Complex::new(exact(v.re), exact(v.im))
}

fn finite(vals: impl IntoIterator<Item = f64>) -> Result<()> {
    if vals.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(SeriesError::InvalidArgument("non-finite input".into()))
    }
}

fn distinct<T: PartialEq>(v: &[T]) -> Result<()> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return Err(SeriesError::Degenerate(format!("points {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

/// Checks the `t`-form identity for each `a`, in exact rational arithmetic
/// on the given (binary) inputs.
pub fn identity_b4_check(t: &[f64], a_values: &[f64]) -> Result<bool> {
    if t.is_empty() || t.len() > 6 {
        return Err(SeriesError::InvalidArgument(format!("need 1 <= n <= 6, got {}", t.len())));
    }
    finite(t.iter().chain(a_values).copied())?;
    distinct(t)?;
    let tq: Vec<BigRational> = t.iter().map(|&v| exact(v)).collect();
    Ok(a_values.iter().all(|&a| {
        let (l, r) = b4_sides(&tq, &exact(a));
        l == r
    }))
}

/// Checks the determinant identity exactly at the given complex points.
pub fn identity_b5_check(xi: &[Complex<f64>]) -> Result<bool> {
    if xi.is_empty() || xi.len() > 5 {
        return Err(SeriesError::InvalidArgument(format!("need 1 <= n <= 5, got {}", xi.len())));
    }
    finite(xi.iter().flat_map(|z| [z.re, z.im]))?;
    distinct(xi)?;
    let q: Vec<GaussianRational> = xi.iter().map(|&z| exact_c(z)).collect();
    let two = GaussianRational::one() + GaussianRational::one();
    for i in 0..q.len() {
        for j in 0..q.len() {
            let d = q[i].clone() * q[j].clone() + GaussianRational::one() - two.clone() * q[i].clone();
            if d.is_zero() {
                return Err(SeriesError::Degenerate(format!("denominator vanishes at ({i}, {j})")));
            }
        }
    }
    let (l, r) = b5_sides(&q);
    Ok(l == r)
}
