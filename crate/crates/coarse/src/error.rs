use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoarseError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("vertex label `{0}` is not in the graph")]
    UnknownLabel(String),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not connected: vertex `{0}` is unreachable from the first vertex")]
    Disconnected(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid vertex label `{0}`: labels must be non-empty and whitespace free")]
    InvalidLabel(String),
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("exact metric rejected: {0}")]
    MetricMismatch(String),
    #[error("quasigeodesic parameter must be at least 1, got {0}")]
    BadLambda(String),
    #[error("sequence is not a quasigeodesic: {0}")]
    NotQuasigeodesic(String),
    #[error("graph with {vertices} vertices exceeds the exhaustive limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, CoarseError>;
