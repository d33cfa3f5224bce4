//! Moments and cumulants of the height `N(x,t)`.
//!
//! With `<e^{lambda N}> = det(1 + omega K) M_0` and
//! `det(1 + omega K) = sum_k omega^k J_k / k!`, the `n`-th moment is
//! `sum_k m_{n,k} J_k` where `m_{n,k}` is the coefficient of `lambda^n/n!` in
//! `omega^k/k! M_0`.  Taking logarithms instead gives the cumulants as
//! linear combinations of the traces `I_l = Tr K^l`.

use std::str::FromStr;

use kernel_fredholm::{multi_integral_jn, BesselSpectrum, DensityPair, Evaluated, KernelSpec, LinalgScalar};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coefficient::{factorial, pow, Coefficient};
use crate::combinatorics::alpha;
use crate::error::{Result, SeriesError};
use crate::series::{check_order, SeriesPoly};

/// Highest `k` for which `J_k` is available as a contour integral.
pub const MAX_CONTOUR_J: usize = 4;
/// Highest cumulant order supported by [`cumulant_n_finite`].
pub const MAX_CUMULANT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `omega(lambda) = rho_+(e^l - 1) + rho_-(e^{-l} - 1) + rho_+ rho_- (e^l - 1)(e^{-l} - 1)`.
    Omega,
    /// `(1 + rho_+(e^l - 1))^x` for `x >= 0`, `(1 + rho_-(e^{-l} - 1))^{-x}` otherwise.
    M0 { x: i64 },
    ExpLambda,
}

impl FromStr for SeriesKind {
    type Err = SeriesError;

    /// Accepts `omega`, `exp_lambda` and `M0:<x>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega" => Ok(SeriesKind::Omega),
            "exp_lambda" | "exp" => Ok(SeriesKind::ExpLambda),
            other => {
                if let Some(rest) = other.strip_prefix("m0:") {
                    let x = rest
                        .parse()
                        .map_err(|_| SeriesError::InvalidArgument(format!("bad site in series kind {s:?}")))?;
                    Ok(SeriesKind::M0 { x })
                } else {
                    Err(SeriesError::InvalidArgument(format!("unsupported series kind {s:?}")))
                }
            }
        }
    }
}

/// Exact truncated series of the chosen function of `lambda`.
pub fn series_from_function<C: Coefficient>(kind: SeriesKind, rho_minus: &C, rho_plus: &C, order: usize) -> Result<SeriesPoly<C>> {
    check_order(order)?;
    let one = SeriesPoly::one(order);
    let ep = SeriesPoly::exp_linear(C::one(), order).sub(&one);
    let em = SeriesPoly::exp_linear(-C::one(), order).sub(&one);
    Ok(match kind {
        SeriesKind::ExpLambda => SeriesPoly::exp_linear(C::one(), order),
        SeriesKind::Omega => ep
            .scale(rho_plus)
            .add(&em.scale(rho_minus))
            .add(&ep.mul(&em).scale(&(rho_plus.clone() * rho_minus.clone()))),
        SeriesKind::M0 { x } if x >= 0 => one.add(&ep.scale(rho_plus)).powi(x as usize),
        SeriesKind::M0 { x } => one.add(&em.scale(rho_minus)).powi(x.unsigned_abs() as usize),
    })
}

/// All `m_{n,k}`, `0 <= k <= n <= order`, as `table[k].coeffs[n]`.
pub fn m_coeff_table<C: Coefficient>(order: usize, x: i64, rho_minus: &C, rho_plus: &C) -> Result<Vec<SeriesPoly<C>>> {
    let w = series_from_function(SeriesKind::Omega, rho_minus, rho_plus, order)?;
    let m0 = series_from_function(SeriesKind::M0 { x }, rho_minus, rho_plus, order)?;
    let mut out = Vec::with_capacity(order + 1);
    let mut wk = SeriesPoly::one(order);
    for k in 0..=order {
        out.push(wk.mul(&m0).scale(&(C::one() / factorial::<C>(k))));
        wk = wk.mul(&w);
    }
    Ok(out)
}

/// Coefficient of `lambda^n/n!` in `omega^k/k! M_0`.
pub fn m_coeff<C: Coefficient>(n: usize, k: usize, x: i64, rho_minus: &C, rho_plus: &C) -> Result<C> {
    if k > n {
        return Err(SeriesError::InvalidArgument(format!("need k <= n, got k = {k}, n = {n}")));
    }
    Ok(m_coeff_table(n, x, rho_minus, rho_plus)?[k].coeff(n))
}

fn exact_density<T: LinalgScalar>(d: &DensityPair<T>) -> (BigRational, BigRational) {
    (BigRational::from_f64(d.rho_minus.as_f64()), BigRational::from_f64(d.rho_plus.as_f64()))
}

/// Parity: `N(x; rho_-, rho_+)` has the law of `-N(-x; rho_+, rho_-)`.
fn to_nonnegative<T: LinalgScalar>(x: i64, d: &DensityPair<T>, n: usize) -> (i64, DensityPair<T>, T) {
    if x >= 0 {
        (x, *d, T::one())
    } else {
        let s = if n % 2 == 0 { T::one() } else { -T::one() };
        (-x, d.swapped(), s)
    }
}

/// `<N(x,t)^n>` with `J_k` from the contour integrals, `n <= 4`.
pub fn moment_n<T: LinalgScalar>(x: i64, t: T, d: &DensityPair<T>, n: usize) -> Result<Evaluated<T, T>> {
    if n > MAX_CONTOUR_J {
        return Err(SeriesError::OrderTooLarge { order: n, cap: MAX_CONTOUR_J });
    }
    let (xp, dp, sign) = to_nonnegative(x, d, n);
    let spec = KernelSpec::standard(xp, t)?;
    let (rm, rp) = exact_density(&dp);
    let table = m_coeff_table(n, xp, &rm, &rp)?;
    let (mut value, mut err, mut nodes, mut conv) = (T::zero(), T::zero(), 0, true);
    for (k, row) in table.iter().enumerate() {
        let m = T::lit(row.coeff(n).to_f64());
        if m == T::zero() {
            continue;
        }
        let j = multi_integral_jn(&spec, k)?;
        value += m * j.value;
        err += m.abs() * j.est_error;
        nodes = nodes.max(j.n_nodes);
        conv &= j.converged;
    }
    Ok(Evaluated { value: sign * value, est_error: err, n_nodes: nodes, converged: conv })
}

/// `J_k = k! e_k(beta)` from the eigenvalues of the real-line operator.
pub fn j_from_spectrum<T: LinalgScalar>(spec: &BesselSpectrum<T>, k_max: usize) -> Vec<T> {
    let mut e = vec![T::zero(); k_max + 1];
    e[0] = T::one();
    for &b in &spec.eigenvalues {
        for k in (1..=k_max).rev() {
            let prev = e[k - 1];
            e[k] += b * prev;
        }
    }
    e.iter().enumerate().map(|(k, &v)| v * T::lit(factorial::<f64>(k))).collect()
}

/// Moments `<N^n>`, `n = 1..=order`, with `J_k` from the spectrum; works at any `t`.
pub fn moments_spectral<T: LinalgScalar>(x: i64, t: T, d: &DensityPair<T>, order: usize) -> Result<Vec<T>> {
    check_order(order)?;
    let spec = BesselSpectrum::new(x.unsigned_abs(), t);
    let (xp, dp, _) = to_nonnegative(x, d, 0);
    let (rm, rp) = exact_density(&dp);
    let table = m_coeff_table(order, xp, &rm, &rp)?;
    let j = j_from_spectrum(&spec, order);
    Ok((1..=order)
        .map(|n| {
            let v = (0..=n).fold(T::zero(), |acc, k| acc + T::lit(table[k].coeff(n).to_f64()) * j[k]);
            if x < 0 && n % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}

/// `n`-th cumulant of `N(x,t)`:
/// `sum_l (-1)^{l-1} (l-1)! (alpha_{n,l}(r_+, r_-) I_l + alpha_{n,l}(1,0) x rho_+^l)`.
pub fn cumulant_n_finite<T: LinalgScalar>(x: i64, t: T, d: &DensityPair<T>, n: usize) -> Result<T> {
    let spec = BesselSpectrum::new(x.unsigned_abs(), t);
    cumulant_n_with_spectrum(x, d, n, &spec)
}

/// As [`cumulant_n_finite`], reusing a spectrum built for `|x|` and `t`.
pub fn cumulant_n_with_spectrum<T: LinalgScalar>(x: i64, d: &DensityPair<T>, n: usize, spec: &BesselSpectrum<T>) -> Result<T> {
    if n == 0 || n > MAX_CUMULANT {
        return Err(SeriesError::InvalidArgument(format!("cumulant order must be in 1..={MAX_CUMULANT}, got {n}")));
    }
    if spec.x != x.unsigned_abs() {
        return Err(SeriesError::InvalidArgument(format!("spectrum built for |x| = {}, asked for x = {x}", spec.x)));
    }
    let (xp, dp, sign) = to_nonnegative(x, d, n);
    let (rm, rp) = exact_density(&dp);
    let r_plus = rp.clone() * (BigRational::one() - rm.clone());
    let r_minus = rm.clone() * (BigRational::one() - rp.clone());
    let xq = BigRational::from_i64(xp);
    let (one, zero) = (BigRational::one(), BigRational::zero());
    let mut acc = T::zero();
    for l in 1..=n {
        let w = factorial::<BigRational>(l - 1);
        let w = if l % 2 == 0 { -w } else { w };
        let bulk = (w.clone() * alpha(n, l, &r_plus, &r_minus)?).to_f64();
        let edge = (w * alpha(n, l, &one, &zero)? * xq.clone() * pow(&rp, l)).to_f64();
        acc += T::lit(bulk) * spec.trace_power(l as u32) + T::lit(edge);
    }
    Ok(sign * acc)
}
