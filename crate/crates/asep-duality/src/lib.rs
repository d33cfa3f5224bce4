//! Asymmetric exclusion (`tau = p/q < 1`) started from two-sided Bernoulli
//! data: tau-moments `<tau^{nN(x,t)}>` for `n = 1, 2` from their residue
//! expansions around `-1`, checks against the evolution equations, and the
//! limit `tau -> 1` back to the symmetric moments.

pub mod duality;
pub mod error;
pub mod evolution;
pub mod limit;
pub mod params;

pub use duality::{
    f_xt, gamma_alt, gamma_z, lambda_exp, tau_correlation2, tau_correlation_initial, tau_moment, tau_moment1,
    ResidueExpansion,
};
pub use error::{DualityError, Result};
pub use evolution::{evolution_coefficients, evolution_residual, evolution_rhs};
pub use limit::{scaled_binomial_moment, symmetric_limit_check, LimitPoint, SymmetricLimitReport};
pub use params::AsepParams;

pub type AsepParams64 = AsepParams<f64>;
pub type ResidueExpansion64 = ResidueExpansion<f64>;
