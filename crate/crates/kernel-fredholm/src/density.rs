use contour_quad::Real;

use crate::error::{KernelError, Result};

/// Bernoulli densities on sites `x <= 0` (`rho_minus`) and `x >= 1` (`rho_plus`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPair<T> {
    pub rho_minus: T,
    pub rho_plus: T,
}

impl<T: Real> DensityPair<T> {
    pub fn new(rho_minus: T, rho_plus: T) -> Result<Self> {
        let ok = |r: T| r >= T::zero() && r <= T::one();
        if !ok(rho_minus) || !ok(rho_plus) {
            return Err(KernelError::InvalidArgument(format!(
                "densities must lie in [0,1], got ({rho_minus}, {rho_plus})"
            )));
        }
        Ok(DensityPair { rho_minus, rho_plus })
    }

    pub fn equilibrium(rho: T) -> Result<Self> {
        Self::new(rho, rho)
    }

    /// rho/(1-rho); infinite at density one.
    pub fn theta_minus(&self) -> T {
        theta(self.rho_minus)
    }

    pub fn theta_plus(&self) -> T {
        theta(self.rho_plus)
    }

    pub fn r_plus(&self) -> T {
        self.rho_plus * (T::one() - self.rho_minus)
    }

    pub fn r_minus(&self) -> T {
        self.rho_minus * (T::one() - self.rho_plus)
    }

    /// Left and right exchanged (spatial parity).
    pub fn swapped(&self) -> Self {
        DensityPair { rho_minus: self.rho_plus, rho_plus: self.rho_minus }
    }

    /// Particles and holes exchanged.
    pub fn particle_hole(&self) -> Self {
        DensityPair { rho_minus: T::one() - self.rho_minus, rho_plus: T::one() - self.rho_plus }
    }
}

fn theta<T: Real>(rho: T) -> T {
    if rho >= T::one() {
        T::infinity()
    } else {
        rho / (T::one() - rho)
    }
}
