use std::path::PathBuf;

use thiserror::Error;

/// Everything here maps to exit status 3: the input could not be used.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Model(#[from] hhs_model::ModelError),
    #[error(transparent)]
    Zoo(#[from] hhs_zoo::ZooError),
    #[error(transparent)]
    Action(#[from] hhs_action::ActionError),
    #[error(transparent)]
    Amalgam(#[from] hhs_amalgam::AmalgamError),
    #[error(transparent)]
    Convexity(#[from] hhs_convexity::ConvexityError),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}
