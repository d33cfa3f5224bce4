use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integrand not finite at node {index} (xi = {node})")]
    Evaluation { index: usize, node: String },
    #[error("unsupported dimension {0} (at most 4)")]
    UnsupportedDimension(usize),
}
