use contour_quad::QuadError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("kernel denominator {modulus:e} too close to a pole at xi1 = {xi1}, xi2 = {xi2}")]
    PoleProximity { xi1: String, xi2: String, modulus: f64 },
    #[error("contour radius {0} does not keep the kernel poles outside")]
    ContourTooLarge(f64),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
