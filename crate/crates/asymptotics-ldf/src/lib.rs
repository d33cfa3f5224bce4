//! Large-time asymptotics of the height and of the tagged particle.
//!
//! `mu(xi, lambda)` is the scaled cumulant generating function of
//! `N(x,t)` at `x = -2 xi sqrt(t)`; its Legendre transform gives the rate
//! function `Phi` of the height, `phi = Phi(., 0)` is the rate function of
//! the tracer position, and `C(s)` its cumulant generating function.

pub mod error;
pub mod legendre;
pub mod limits;
pub mod mu;
pub mod optimize;
pub mod special;
pub mod table;

pub use error::{LdfError, Result};
pub use legendre::{xi0_solve, RateFunctions, Transform, LAMBDA_MAX, XI_MAX};
pub use limits::{
    hydrodynamic_height, iasym_check, limiting_cumulant_n, tracer_fourth_cumulant_equilibrium,
    tracer_variance_equilibrium, IasymRow,
};
pub use mu::{MuEvaluator, MuMethod, MuOptions, MuValue, SERIES_OMEGA_MAX};
pub use optimize::{bisect, brent_max, brent_min, Extremum};
pub use special::{a_func, xi_func, xi_n, LdfScalar};
pub use table::{ldf_table, LdfRow, LdfTable, Quantity, ScaledPoint};

pub type MuEvaluator64 = MuEvaluator<f64>;
pub type RateFunctions64 = RateFunctions<f64>;
