use contour_quad::Real;
use kernel_fredholm::DensityPair;

use crate::error::{DualityError, Result};

/// Rates `p` (right) and `q` (left) with `tau = p/q` in `(0, 1)`, and the
/// initial densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsepParams<T> {
    pub p: T,
    pub q: T,
    pub density: DensityPair<T>,
}

impl<T: Real> AsepParams<T> {
    pub fn new(p: T, q: T, density: DensityPair<T>) -> Result<Self> {
        if !(q > T::zero()) || !q.is_finite() {
            return Err(DualityError::Domain(format!("q must be positive, got {q}")));
        }
        let tau = p / q;
        if !(tau > T::zero() && tau < T::one()) {
            return Err(DualityError::Domain(format!("tau = p/q must lie in (0, 1), got {tau}")));
        }
        let (rm, rp) = (density.rho_minus, density.rho_plus);
        if !(rm < T::one() && rp < T::one()) {
            return Err(DualityError::Domain(format!("densities must be below 1, got ({rm}, {rp})")));
        }
        if !(rp > T::zero()) {
            return Err(DualityError::Domain("rho_plus must be positive".into()));
        }
        Ok(AsepParams { p, q, density })
    }

    /// `tau = 1 - eps` with `q = 1`, `p = 1 - eps`.
    pub fn near_symmetric(eps: T, density: DensityPair<T>) -> Result<Self> {
        Self::new(T::one() - eps, T::one(), density)
    }

    pub fn tau(&self) -> T {
        self.p / self.q
    }

    pub fn theta_plus(&self) -> T {
        self.density.theta_plus()
    }

    pub fn theta_minus(&self) -> T {
        self.density.theta_minus()
    }

    /// `r_-/r_+ = theta_-/theta_+`.
    pub fn r_ratio(&self) -> T {
        self.density.r_minus() / self.density.r_plus()
    }

    /// Radius of the circles around `-1`: `min(1 - tau, |1 + tau theta_+|)/4`.
    pub fn radius(&self) -> T {
        let t = self.tau();
        (T::one() - t).min((T::one() + t * self.theta_plus()).abs()) / T::lit(4.0)
    }
}
