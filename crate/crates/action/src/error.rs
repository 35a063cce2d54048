use hhs_model::ModelError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word `{0}`")]
    MalformedWord(String),
    #[error("automorphism table shape: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, ActionError>;
