//! Monte Carlo for the symmetric (and asymmetric) simple exclusion process on
//! `Z` started from independent Bernoulli occupations, density `rho_-` on
//! sites `x <= 0` and `rho_+` on `x >= 1`.
//!
//! Heights follow `N(x,t) = #{particles <= x at t} - #{particles <= 0 at 0}`.
//! Particle labels run `... < X_1 < X_0 < X_{-1} < ...` with `X_0` the first
//! particle at a site `>= 1` at time zero, so `X_m(t) <= x` iff `N(x,t) >= 1 - m`.

pub mod config;
pub mod error;
pub mod estimate;
pub mod io;
pub mod sim;

pub use config::{SimConfig, DEFAULT_MAX_EVENTS};
pub use error::{Result, SimError};
pub use estimate::{
    audit_identities, estimate_density, estimate_gf, estimate_observables, estimate_tagged, ks_two_sample, merge_variances,
    parity_ks, run_samples, CdfPoint, Estimate, IdentityAudit, KsResult, TaggedEstimate, MIN_SAMPLES,
};
pub use io::{fmt_f64, to_json, trajectory_table, write_json, CsvTable, TRAJECTORY_SCHEMA};
pub use sim::{init_bernoulli, run, sample_rng, simulate, SiteRecord, State, TagRecord, Trajectory, Violations};
