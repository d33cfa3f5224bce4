//! Circle contours around the origin and trapezoidal quadrature on them.
//!
//! Integrals are normalised as `(1/(2 pi i)) \oint f(xi) dxi`, the factor
//! living inside the weights.

pub mod contour;
pub mod error;
pub mod scalar;

pub use contour::{
    integrate_1d, integrate_1d_capped, integrate_nd, integrate_nd_with, make_contour, tensor_sum,
    Contour, NdOptions, QuadResult, DEFAULT_EVAL_BUDGET, DEFAULT_NODE_CAP,
};
pub use error::QuadError;
pub use num_complex::Complex;
pub use scalar::{cplx, is_finite_c, Real};

pub type Contour64 = Contour<f64>;
pub type Contour32 = Contour<f32>;
pub type QuadResult64 = QuadResult<f64>;
pub type C64 = Complex<f64>;
