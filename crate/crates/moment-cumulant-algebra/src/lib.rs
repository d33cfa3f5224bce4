//! Truncated exponential-generating series in `lambda`, partition sums, and
//! the moments and cumulants of the height `N(x,t)` built from them.
//!
//! The algebra is generic over [`Coefficient`]: `f64`/`f32` for speed, or
//! `BigRational` when the partition sums should be exact.

pub mod coefficient;
pub mod combinatorics;
pub mod error;
pub mod moments;
pub mod partition;
pub mod series;

pub use coefficient::{binomial, factorial, Coefficient};
pub use combinatorics::{
    alpha, b4_sides, b4_xi_sides, b5_sides, cumulants_from_moments, exact_det, identity_b4_check, identity_b5_check,
    moments_from_cumulants, q_binomial, q_subset_sum, signed_permutations, GaussianRational,
};
pub use error::{Result, SeriesError};
pub use moments::{
    cumulant_n_finite, cumulant_n_with_spectrum, j_from_spectrum, m_coeff, m_coeff_table, moment_n, moments_spectral,
    series_from_function, SeriesKind, MAX_CONTOUR_J, MAX_CUMULANT,
};
pub use num_rational::BigRational;
pub use partition::{partitions, Partition};
pub use series::{SeriesPoly, MAX_ORDER};

pub type Series = SeriesPoly<f64>;
pub type Series32 = SeriesPoly<f32>;
pub type ExactSeries = SeriesPoly<BigRational>;
