use hhs_amalgam::AmalgamError;
use hhs_coarse::CoarseError;
use hhs_model::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConvexityError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Coarse(#[from] CoarseError),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error("subset `{0}` is empty")]
    EmptySubset(String),
    #[error("vertex {0} is not in the model")]
    Vertex(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ConvexityError>;
