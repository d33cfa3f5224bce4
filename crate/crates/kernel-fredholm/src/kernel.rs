//! The kernel on the contour `C_0`, its Nystrom matrix, traces, the
//! multiple integrals `J_n` and the Fredholm determinant.

use contour_quad::{make_contour, Complex, Contour, Real};
use nalgebra::DMatrix;

use crate::error::{KernelError, Result};
use crate::linalg::LinalgScalar;

/// Denominators below this modulus are treated as a pole hit.
pub const POLE_EPS: f64 = 1e-12;
/// Largest Nystrom dimension the doubling loops will try.
pub const NYSTROM_NODE_CAP: usize = 1024;
/// Budget of integrand evaluations for `J_n`.
pub const JN_EVAL_BUDGET: usize = 1 << 25;
pub const DEFAULT_RADIUS: f64 = 0.25;
pub const DEFAULT_NODES: usize = 32;

/// A computed value with the diagnostics of its refinement loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated<V, T> {
    pub value: V,
    pub est_error: T,
    pub n_nodes: usize,
    pub converged: bool,
}

/// `eps(xi) = xi + 1/xi - 2`
#[inline]
pub fn dispersion<T: Real>(xi: Complex<T>) -> Complex<T> {
    xi + xi.inv() - T::lit(2.0)
}

pub fn kernel_k<T: Real>(x: i64, t: T, xi1: Complex<T>, xi2: Complex<T>) -> Result<Complex<T>> {
    let den = xi1 * xi2 + T::one() - xi2 * T::lit(2.0);
    if den.norm() < T::lit(POLE_EPS) || xi1.norm() == T::zero() {
        return Err(KernelError::PoleProximity {
            xi1: format!("{xi1}"),
            xi2: format!("{xi2}"),
            modulus: den.norm().as_f64(),
        });
    }
    Ok(kernel_unchecked(x.unsigned_abs(), t, xi1, xi2))
}

#[inline]
fn kernel_unchecked<T: Real>(ax: u64, t: T, xi1: Complex<T>, xi2: Complex<T>) -> Complex<T> {
    let den = xi1 * xi2 + T::one() - xi2 * T::lit(2.0);
    xi1.powi(ax as i32) * (dispersion(xi1) * t).exp() / den
}

/// The pole `xi2 = 1/(2 - xi1)` stays outside `|xi| = r` iff `r < 1/(2 + r)`;
/// we ask for a 5% margin.
pub fn radius_is_safe(radius: f64) -> bool {
    radius > 0.0 && radius * (2.0 + radius) < 0.95
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec<T> {
    pub x: i64,
    pub t: T,
    pub contour: Contour<T>,
}

impl<T: Real> KernelSpec<T> {
    pub fn new(x: i64, t: T, contour: Contour<T>) -> Result<Self> {
        if !(t >= T::zero()) || !t.is_finite() {
            return Err(KernelError::InvalidArgument(format!("time must be >= 0, got {t}")));
        }
        if !radius_is_safe(contour.radius.as_f64()) {
            return Err(KernelError::ContourTooLarge(contour.radius.as_f64()));
        }
        Ok(KernelSpec { x, t, contour })
    }

    /// Default contour: radius 0.25, 32 starting nodes.
    pub fn standard(x: i64, t: T) -> Result<Self> {
        let c = make_contour(T::lit(DEFAULT_RADIUS), DEFAULT_NODES)?;
        Self::new(x, t, c)
    }

    fn at_nodes(&self, n: usize) -> Result<Self> {
        Ok(KernelSpec { x: self.x, t: self.t, contour: self.contour.with_nodes(n)? })
    }

    pub fn abs_x(&self) -> u64 {
        self.x.unsigned_abs()
    }
}

/// `D[j][k] = w_k K(xi_j, xi_k)`
#[derive(Debug, Clone, PartialEq)]
pub struct NystromMatrix<T: Real> {
    pub dim: usize,
    pub entries: DMatrix<Complex<T>>,
}

impl<T: Real> NystromMatrix<T> {
    pub fn new(spec: &KernelSpec<T>) -> Self {
        let c = &spec.contour;
        let ax = spec.abs_x();
        // row factor xi_j^x e^{eps t} is shared along the row
        let rows: Vec<Complex<T>> = c
            .nodes
            .iter()
            .map(|&z| z.powi(ax as i32) * (dispersion(z) * spec.t).exp())
            .collect();
        let entries = DMatrix::from_fn(c.n_nodes, c.n_nodes, |j, k| {
            let (a, b) = (c.nodes[j], c.nodes[k]);
            rows[j] * c.weights[k] / (a * b + T::one() - b * T::lit(2.0))
        });
        NystromMatrix { dim: c.n_nodes, entries }
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    /// Traces of `D^1 ... D^n_max`.
    pub fn power_traces(&self, n_max: u32) -> Vec<Complex<T>> {
        let mut out = Vec::with_capacity(n_max as usize);
        if n_max == 0 {
            return out;
        }
        let mut p = self.entries.clone();
        out.push(p.trace());
        for _ in 1..n_max {
            p = &p * &self.entries;
            out.push(p.trace());
        }
        out
    }
}

fn imag_check<T: Real>(z: Complex<T>, what: &str) -> Result<T> {
    let lim = T::lit(1e-9) * T::one().max(z.re.abs());
    if z.im.abs() > lim {
        return Err(KernelError::Consistency(format!(
            "{what} has imaginary part {} (real part {})",
            z.im, z.re
        )));
    }
    Ok(z.re)
}

/// `I_n = Tr K^n` from the Nystrom matrix, doubling the nodes until the
/// change is below `1e-12` relative.
pub fn trace_power_in<T: Real>(spec: &KernelSpec<T>, n: u32) -> Result<Evaluated<T, T>> {
    let all = trace_powers_in(spec, n)?;
    Ok(all.into_iter().last().expect("n >= 1"))
}

/// `I_1 ... I_n` in one refinement loop.
pub fn trace_powers_in<T: Real>(spec: &KernelSpec<T>, n: u32) -> Result<Vec<Evaluated<T, T>>> {
    if n == 0 {
        return Err(KernelError::InvalidArgument("trace power needs n >= 1".into()));
    }
    let tol = T::lit(1e-12);
    let mut nodes = spec.contour.n_nodes;
    let mut prev = NystromMatrix::new(spec).power_traces(n);
    loop {
        let next_nodes = nodes * 2;
        if next_nodes > NYSTROM_NODE_CAP {
            return finish_traces(&prev, None, nodes, false);
        }
        let cur = NystromMatrix::new(&spec.at_nodes(next_nodes)?).power_traces(n);
        nodes = next_nodes;
        let done = prev
            .iter()
            .zip(&cur)
            .all(|(a, b)| (*a - *b).norm() <= tol * T::one().max(b.norm()));
        if done {
            return finish_traces(&cur, Some(&prev), nodes, true);
        }
        prev = cur;
    }
}

fn finish_traces<T: Real>(
    cur: &[Complex<T>],
    prev: Option<&[Complex<T>]>,
    nodes: usize,
    converged: bool,
) -> Result<Vec<Evaluated<T, T>>> {
    cur.iter()
        .enumerate()
        .map(|(k, &z)| {
            let value = imag_check(z, &format!("I_{}", k + 1))?;
            let est_error = prev.map(|p| (p[k] - z).norm()).unwrap_or(T::infinity());
            Ok(Evaluated { value, est_error, n_nodes: nodes, converged })
        })
        .collect()
}

/// Integrand of `J_k` at one point of `C_0^k`.
pub fn jn_integrand<T: Real>(x: i64, t: T, xi: &[Complex<T>]) -> Complex<T> {
    let ax = x.unsigned_abs() as i32;
    let one = Complex::new(T::one(), T::zero());
    let mut acc = one;
    for i in 0..xi.len() {
        for j in (i + 1)..xi.len() {
            acc *= (xi[i] - xi[j]) / (one + xi[i] * xi[j] - xi[j] * T::lit(2.0));
        }
        let d = one - xi[i];
        acc *= xi[i].powi(ax) * (dispersion(xi[i]) * t).exp() / (d * d);
    }
    acc
}

/// `J_n` by tensor-product quadrature, `0 <= n <= 4`.
pub fn multi_integral_jn<T: Real>(spec: &KernelSpec<T>, n: usize) -> Result<Evaluated<T, T>> {
    if n == 0 {
        return Ok(Evaluated { value: T::one(), est_error: T::zero(), n_nodes: 0, converged: true });
    }
    if n > 4 {
        return Err(KernelError::Quad(contour_quad::QuadError::UnsupportedDimension(n)));
    }
    let tol = T::lit(1e-11);
    let mut c = spec.contour.clone();
    let mut prev = jn_tensor(spec.x, spec.t, &c, n);
    loop {
        let m = c.n_nodes * 2;
        if m.checked_pow(n as u32).map_or(true, |e| e > JN_EVAL_BUDGET) || m > NYSTROM_NODE_CAP {
            let value = imag_check(prev, &format!("J_{n}"))?;
            return Ok(Evaluated { value, est_error: T::infinity(), n_nodes: c.n_nodes, converged: false });
        }
        c = c.doubled();
        let cur = jn_tensor(spec.x, spec.t, &c, n);
        let err = (cur - prev).norm();
        if err <= tol * T::one().max(cur.norm()) {
            let value = imag_check(cur, &format!("J_{n}"))?;
            return Ok(Evaluated { value, est_error: err, n_nodes: c.n_nodes, converged: true });
        }
        prev = cur;
    }
}

/// Nested sum with the pair factors tabulated once per node set.
fn jn_tensor<T: Real>(x: i64, t: T, c: &Contour<T>, d: usize) -> Complex<T> {
    let n = c.n_nodes;
    let one = Complex::new(T::one(), T::zero());
    let ax = x.unsigned_abs() as i32;
    let single: Vec<Complex<T>> = c
        .nodes
        .iter()
        .zip(&c.weights)
        .map(|(&z, &w)| {
            let d1 = one - z;
            w * z.powi(ax) * (dispersion(z) * t).exp() / (d1 * d1)
        })
        .collect();
    let mut pair = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (c.nodes[i], c.nodes[j]);
            pair[i * n + j] = (a - b) / (one + a * b - b * T::lit(2.0));
        }
    }
    let mut idx = Vec::with_capacity(d);
    nest(&single, &pair, n, d, &mut idx, one)
}

fn nest<T: Real>(
    single: &[Complex<T>],
    pair: &[Complex<T>],
    n: usize,
    d: usize,
    idx: &mut Vec<usize>,
    prefix: Complex<T>,
) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..n {
        let mut p = prefix * single[j];
        for &i in idx.iter() {
            p *= pair[i * n + j];
        }
        if idx.len() + 1 == d {
            acc += p;
        } else {
            idx.push(j);
            acc += nest(single, pair, n, d, idx, p);
            idx.pop();
        }
    }
    acc
}

/// `det(1 + w K)` on `L^2(C_0)` via Nystrom + LU, doubling nodes until the
/// relative change is below `1e-10`.
pub fn fredholm_det<T: LinalgScalar>(spec: &KernelSpec<T>, w: Complex<T>) -> Result<Evaluated<Complex<T>, T>> {
    let tol = T::lit(1e-10);
    let det_at = |s: &KernelSpec<T>| -> Result<Complex<T>> {
        let d = NystromMatrix::new(s);
        let m = DMatrix::<Complex<T>>::identity(d.dim, d.dim) + d.entries * w;
        let v = T::complex_det(m);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(KernelError::Numerical(format!(
                "LU determinant not finite with {} nodes on radius {}",
                s.contour.n_nodes, s.contour.radius
            )));
        }
        Ok(v)
    };
    let mut nodes = spec.contour.n_nodes;
    let mut prev = det_at(spec)?;
    loop {
        let next = nodes * 2;
        if next > NYSTROM_NODE_CAP {
            return Ok(Evaluated { value: prev, est_error: T::infinity(), n_nodes: nodes, converged: false });
        }
        let cur = det_at(&spec.at_nodes(next)?)?;
        nodes = next;
        let err = (cur - prev).norm();
        if err <= tol * cur.norm().max(T::min_positive_value()) {
            return Ok(Evaluated { value: cur, est_error: err, n_nodes: nodes, converged: true });
        }
        prev = cur;
    }
}
