//! `A(xi)`, `Xi(xi)` and `Xi_n(xi)`.

use kernel_fredholm::LinalgScalar;

/// Scalars with an error function.
pub trait LdfScalar: LinalgScalar {
    fn erf(self) -> Self;
    fn erfc(self) -> Self;
}

impl LdfScalar for f64 {
    fn erf(self) -> Self {
        libm::erf(self)
    }
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl LdfScalar for f32 {
    fn erf(self) -> Self {
        libm::erff(self)
    }
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

/// `A(xi) = e^{-xi^2}/sqrt(pi) + xi erf(xi)`; even, `A(xi) >= |xi|`.
pub fn a_func<T: LdfScalar>(xi: T) -> T {
    (-xi * xi).exp() * T::FRAC_2_SQRT_PI() * T::lit(0.5) + xi * xi.erf()
}

/// `Xi(xi) = A(xi) - xi = int_xi^inf erfc(u) du = e^{-xi^2}/sqrt(pi) - xi erfc(xi)`.
pub fn xi_func<T: LdfScalar>(xi: T) -> T {
    (-xi * xi).exp() * T::FRAC_2_SQRT_PI() * T::lit(0.5) - xi * xi.erfc()
}

/// `Xi_n(xi) = Xi(sqrt(n) xi) / sqrt(n)`.
pub fn xi_n<T: LdfScalar>(n: u32, xi: T) -> T {
    let s = T::from_usize_lossy(n as usize).sqrt();
    xi_func(s * xi) / s
}
