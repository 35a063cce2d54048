use hhs_coarse::CoarseError;
use hhs_model::ModelError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("window too small: {0}")]
    Truncation(String),
}

impl From<CoarseError> for ZooError {
    fn from(e: CoarseError) -> Self {
        ZooError::Model(e.into())
    }
}

pub type Result<T> = std::result::Result<T, ZooError>;
