use hhs_action::ActionError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmalgamError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("no witness domain for {0}")]
    MissingWitness(String),
    #[error("{0} lies in the common subgroup")]
    ElementInCommon(String),
    #[error("unsupported amalgam data: {0}")]
    Unsupported(String),
    #[error("relative projection undefined: {0}")]
    RelationTable(String),
}

pub type Result<T> = std::result::Result<T, AmalgamError>;
