//! Real-line representation of the kernel.
//!
//! For `x >= 0` the traces `Tr K_{x,t}^n` coincide with the traces of the
//! positive operator `B(s,s') = e^{-s-s'} I_x(2 sqrt(s s'))` on `[0, t]`, so
//! `det(1 + w K_{x,t}) = prod_k (1 + w beta_k)` over the eigenvalues `beta_k`
//! of `B`.  Unlike the contour form this stays well conditioned for large `t`.
//!
//! With `s = u^2` the kernel becomes `e^{-(u-u')^2} e^{-z} I_x(z)`, `z = 2uu'`,
//! which is smooth on `[0, sqrt t]` and discretised with composite
//! Gauss-Legendre panels and symmetric square-root weights.

use std::num::NonZeroUsize;

use contour_quad::{Complex, Real};
use gauss_quad::legendre::GaussLegendre;
use nalgebra::DMatrix;

use crate::bessel::scaled_bessel_i;
use crate::linalg::LinalgScalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Panel width in the `u = sqrt(s)` variable.
    pub panel_width: f64,
    /// Gauss-Legendre points per panel for the reported spectrum.
    pub order: usize,
    /// Coarser order used only for the error estimate; `None` skips it.
    pub check_order: Option<usize>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { panel_width: 2.0, order: 16, check_order: Some(12) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BesselSpectrum<T> {
    pub x: u64,
    pub t: T,
    /// Eigenvalues, descending; all lie in `[0, 1)`.
    pub eigenvalues: Vec<T>,
    pub n_nodes: usize,
    /// Difference in `Tr B` and `log det(1+B)` between the two orders.
    pub est_error: T,
}

impl<T: LinalgScalar> BesselSpectrum<T> {
    pub fn new(x: u64, t: T) -> Self {
        Self::with_options(x, t, SpectrumOptions::default())
    }

    pub fn with_options(x: u64, t: T, opts: SpectrumOptions) -> Self {
        let (eig, n_nodes) = eigen_at_order(x, t, opts.panel_width, opts.order);
        let est_error = match opts.check_order {
            Some(o) if n_nodes > 0 => {
                let (coarse, _) = eigen_at_order(x, t, opts.panel_width, o);
                let tr = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b);
                let ld = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b.ln_1p());
                (tr(&eig) - tr(&coarse)).abs() + (ld(&eig) - ld(&coarse)).abs()
            }
            _ => T::zero(),
        };
        BesselSpectrum { x, t, eigenvalues: eig, n_nodes, est_error }
    }

    /// `I_n(x,t) = Tr K^n`.
    pub fn trace_power(&self, n: u32) -> T {
        let mut acc = T::zero();
        for &b in self.eigenvalues.iter().rev() {
            acc += b.powi(n as i32);
        }
        acc
    }

    /// `log det(1 + w K)` as a sum of principal logarithms.
    ///
    /// Its exponential is the determinant; the imaginary part is only
    /// defined modulo `2 pi`.
    pub fn log_det(&self, w: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        let mut acc = Complex::new(T::zero(), T::zero());
        for &b in self.eigenvalues.iter().rev() {
            acc += (one + w * b).ln();
        }
        acc
    }

    pub fn det(&self, w: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        self.eigenvalues.iter().fold(one, |acc, &b| acc * (one + w * b))
    }

    /// Real log-determinant for real `w > -1/max(beta)`.
    pub fn log_det_real(&self, w: T) -> T {
        self.eigenvalues.iter().rev().fold(T::zero(), |acc, &b| acc + (w * b).ln_1p())
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or(T::zero())
    }
}

fn eigen_at_order<T: LinalgScalar>(x: u64, t: T, width: f64, order: usize) -> (Vec<T>, usize) {
    if !(t > T::zero()) {
        return (Vec::new(), 0);
    }
    let (u, w) = panel_rule::<T>(t.sqrt(), width, order);
    let m = u.len();
    let xo = x as u32;
    let sw: Vec<T> = u.iter().zip(&w).map(|(&a, &b)| (T::lit(2.0) * a * b).sqrt()).collect();
    let mut s = DMatrix::<T>::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let d = u[a] - u[b];
            let z = T::lit(2.0) * u[a] * u[b];
            let v = sw[a] * sw[b] * (-d * d).exp() * scaled_bessel_i(xo, z);
            s[(a, b)] = v;
            s[(b, a)] = v;
        }
    }
    let mut eig = T::sym_eigenvalues(s);
    // B is positive semi-definite; tiny negative values are rounding.
    for e in eig.iter_mut() {
        if *e < T::zero() {
            *e = T::zero();
        }
    }
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    (eig, m)
}

/// Composite Gauss-Legendre nodes and weights on `[0, len]`.
pub fn panel_rule<T: Real>(len: T, width: f64, order: usize) -> (Vec<T>, Vec<T>) {
    let lenf = len.as_f64();
    let panels = ((lenf / width).ceil() as usize).max(1);
    let h = lenf / panels as f64;
    let gl = GaussLegendre::new(NonZeroUsize::new(order.max(1)).unwrap());
    let mut u = Vec::with_capacity(panels * order);
    let mut w = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = p as f64 * h;
        for &(node, weight) in gl.as_node_weight_pairs() {
            u.push(T::lit(a + 0.5 * h * (node + 1.0)));
            w.push(T::lit(0.5 * h * weight));
        }
    }
    (u, w)
}
