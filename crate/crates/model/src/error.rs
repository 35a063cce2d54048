use hhs_coarse::CoarseError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Coarse(#[from] CoarseError),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("domain index {0} out of range")]
    DomainIndex(usize),
    #[error("duplicate domain name `{0}`")]
    DuplicateDomain(String),
    #[error("model malformed: {0}")]
    Malformed(String),
    #[error("relative projection from `{from}` to `{to}` is required by the relations but missing")]
    MissingRho { from: String, to: String },
    #[error("relative projection from `{from}` to `{to}` is given but the relations do not call for it")]
    UnexpectedRho { from: String, to: String },
    #[error("relative projection from `{from}` to `{to}` is undefined")]
    UndefinedRho { from: String, to: String },
    #[error("coordinate tuple has no entry for domain `{0}`")]
    PartialTuple(String),
    #[error("coordinate tuple is not {r}-consistent: {detail}")]
    InconsistentTuple { r: u32, detail: String },
    #[error("model file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;
