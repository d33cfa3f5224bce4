//! The kernel `K_{x,t}(xi1, xi2) = xi1^{|x|} e^{eps(xi1) t} / (xi1 xi2 + 1 - 2 xi2)`,
//! its traces, multiple integrals and Fredholm determinant, and the
//! generating function of the height `N(x,t)` built on top of it.
//!
//! Two numerical routes are available.  The contour route ([`kernel`])
//! discretises `C_0` directly and is accurate for moderate `t`.  The
//! spectral route ([`spectrum`]) uses an equivalent positive operator on
//! `[0, t]` and is what the generating function uses at every `t`.

pub mod bessel;
pub mod density;
pub mod error;
pub mod gf;
pub mod kernel;
pub mod linalg;
pub mod spectrum;

pub use bessel::{bessel_i, scaled_bessel_i};
pub use density::DensityPair;
pub use error::{KernelError, Result};
pub use gf::{
    gf_height, height_pmf, m0_factor, omega_of_lambda, omega_of_lambda_real, tagged_cdf, GfEvaluator,
    ZContourOptions,
};
pub use kernel::{
    dispersion, fredholm_det, jn_integrand, kernel_k, multi_integral_jn, radius_is_safe, trace_power_in,
    trace_powers_in, Evaluated, KernelSpec, NystromMatrix,
};
pub use linalg::LinalgScalar;
pub use spectrum::{BesselSpectrum, SpectrumOptions};

pub type DensityPair64 = DensityPair<f64>;
pub type KernelSpec64 = KernelSpec<f64>;
pub type BesselSpectrum64 = BesselSpectrum<f64>;
pub type GfEvaluator64 = GfEvaluator<f64>;
