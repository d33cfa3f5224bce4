use num_complex::Complex;

use crate::error::QuadError;
use crate::scalar::{is_finite_c, Real};

/// Default per-axis node cap for the doubling loops.
pub const DEFAULT_NODE_CAP: usize = 4096;

/// Default budget for the total number of integrand calls in `integrate_nd`.
pub const DEFAULT_EVAL_BUDGET: usize = 1 << 26;

/// Circle `|xi| = radius` discretised with equispaced nodes.
///
/// Weights are `xi_j / n`, so that `sum_j w_j f(xi_j)` approximates
/// `(1/(2 pi i)) \oint f(xi) dxi` taken counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour<T> {
    pub radius: T,
    pub n_nodes: usize,
    pub nodes: Vec<Complex<T>>,
    pub weights: Vec<Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: Complex<T>,
    /// `|S(2n) - S(n)|` of the last doubling step.
    pub est_error: T,
    pub n_nodes_used: usize,
    pub converged: bool,
}

pub fn make_contour<T: Real>(radius: T, n_nodes: usize) -> Result<Contour<T>, QuadError> {
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(QuadError::InvalidArgument(format!(
            "radius must be positive and finite, got {radius}"
        )));
    }
    if n_nodes < 8 {
        return Err(QuadError::InvalidArgument(format!(
            "need at least 8 nodes, got {n_nodes}"
        )));
    }
    let nodes: Vec<Complex<T>> = (0..n_nodes)
        .map(|j| circle_point(radius, j, n_nodes, T::zero()))
        .collect();
    let inv_n = T::one() / T::from_usize_lossy(n_nodes);
    let weights = nodes.iter().map(|&z| z * inv_n).collect();
    Ok(Contour { radius, n_nodes, nodes, weights })
}

/// `radius * exp(2 pi i (j + shift) / n)`
#[inline]
fn circle_point<T: Real>(radius: T, j: usize, n: usize, shift: T) -> Complex<T> {
    let theta = T::TAU() * (T::from_usize_lossy(j) + shift) / T::from_usize_lossy(n);
    Complex::from_polar(radius, theta)
}

impl<T: Real> Contour<T> {
    /// Same circle with twice as many nodes.
    pub fn doubled(&self) -> Contour<T> {
        make_contour(self.radius, self.n_nodes * 2).expect("doubling a valid contour")
    }

    pub fn with_nodes(&self, n_nodes: usize) -> Result<Contour<T>, QuadError> {
        make_contour(self.radius, n_nodes)
    }

    /// Plain trapezoid sum on the stored nodes, no refinement.
    pub fn sum<F>(&self, mut f: F) -> Result<Complex<T>, QuadError>
    where
        F: FnMut(Complex<T>) -> Complex<T>,
    {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, (&z, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let v = f(z);
            if !is_finite_c(v) {
                return Err(eval_error(j, z));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

fn eval_error<T: Real>(index: usize, z: Complex<T>) -> QuadError {
    QuadError::Evaluation { index, node: format!("{z}") }
}

/// `\oint f dxi/(2 pi i)` with node doubling until `|S(2n)-S(n)| < tol`.
pub fn integrate_1d<T, F>(f: F, c: &Contour<T>, tol: T) -> Result<QuadResult<T>, QuadError>
where
    T: Real,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    integrate_1d_capped(f, c, tol, DEFAULT_NODE_CAP)
}

/// Doubling reuses the previous sum: the new nodes are the old ones rotated
/// by half a step.
pub fn integrate_1d_capped<T, F>(
    mut f: F,
    c: &Contour<T>,
    tol: T,
    cap: usize,
) -> Result<QuadResult<T>, QuadError>
where
    T: Real,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    let mut n = c.n_nodes;
    let mut s = c.sum(&mut f)?;
    let half = T::lit(0.5);
    let mut err = T::infinity();
    while n * 2 <= cap {
        let m = 2 * n;
        let inv_m = T::one() / T::from_usize_lossy(m);
        let mut odd = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            let z = circle_point(c.radius, j, n, half);
            let v = f(z);
            if !is_finite_c(v) {
                return Err(eval_error(2 * j + 1, z));
            }
            odd += z * inv_m * v;
        }
        let s2 = s * half + odd;
        err = (s2 - s).norm();
        s = s2;
        n = m;
        if err < tol {
            return Ok(QuadResult { value: s, est_error: err, n_nodes_used: n, converged: true });
        }
    }
    Ok(QuadResult { value: s, est_error: err, n_nodes_used: n, converged: false })
}

#[derive(Debug, Clone, Copy)]
pub struct NdOptions<T> {
    pub tol: T,
    pub max_nodes_per_axis: usize,
    pub max_evaluations: usize,
}

impl<T: Real> NdOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        NdOptions { tol, max_nodes_per_axis: DEFAULT_NODE_CAP, max_evaluations: DEFAULT_EVAL_BUDGET }
    }
}

/// Full tensor-product trapezoid sum of a `d`-variable integrand,
/// every axis on the same circle.
pub fn tensor_sum<T, F>(f: &mut F, c: &Contour<T>, d: usize) -> Result<Complex<T>, QuadError>
where
    T: Real,
    F: FnMut(&[Complex<T>]) -> Complex<T>,
{
    let n = c.n_nodes;
    let mut idx = vec![0usize; d];
    let mut pts: Vec<Complex<T>> = vec![c.nodes[0]; d];
    let mut acc = Complex::new(T::zero(), T::zero());
    loop {
        let mut w = Complex::new(T::one(), T::zero());
        for k in 0..d {
            pts[k] = c.nodes[idx[k]];
            w *= c.weights[idx[k]];
        }
        let v = f(&pts);
        if !is_finite_c(v) {
            return Err(eval_error(idx[0], pts[0]));
        }
        acc += w * v;
        // odometer increment
        let mut k = 0;
        loop {
            if k == d {
                return Ok(acc);
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `d`-fold contour integral (1 <= d <= 4), doubling every axis at once.
pub fn integrate_nd<T, F>(f: F, c: &Contour<T>, d: usize, tol: T) -> Result<QuadResult<T>, QuadError>
where
    T: Real,
    F: FnMut(&[Complex<T>]) -> Complex<T>,
{
    integrate_nd_with(f, c, d, NdOptions::with_tol(tol))
}

pub fn integrate_nd_with<T, F>(
    mut f: F,
    c: &Contour<T>,
    d: usize,
    opts: NdOptions<T>,
) -> Result<QuadResult<T>, QuadError>
where
    T: Real,
    F: FnMut(&[Complex<T>]) -> Complex<T>,
{
    if d == 0 {
        return Err(QuadError::InvalidArgument("dimension must be at least 1".into()));
    }
    if d > 4 {
        return Err(QuadError::UnsupportedDimension(d));
    }
    let mut cur = c.clone();
    let mut s = tensor_sum(&mut f, &cur, d)?;
    let mut err = T::infinity();
    loop {
        let m = cur.n_nodes * 2;
        let evals = m.checked_pow(d as u32).unwrap_or(usize::MAX);
        if m > opts.max_nodes_per_axis || evals > opts.max_evaluations {
            return Ok(QuadResult { value: s, est_error: err, n_nodes_used: cur.n_nodes, converged: false });
        }
        cur = cur.doubled();
        let s2 = tensor_sum(&mut f, &cur, d)?;
        err = (s2 - s).norm();
        s = s2;
        if err < opts.tol {
            return Ok(QuadResult { value: s, est_error: err, n_nodes_used: cur.n_nodes, converged: true });
        }
    }
}
