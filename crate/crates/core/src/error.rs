use thiserror::Error;

/// Errors raised by complex construction, topology checks and the class-𝒞 machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facets have mixed cardinalities ({expected} and {found})")]
    Purity { expected: usize, found: usize },
    #[error("empty complex")]
    Empty,
    #[error("vertex error: {0}")]
    Vertex(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("adjacency error: {0}")]
    Adjacency(String),
    #[error("path error: {0}")]
    Path(String),
    #[error("boundary error: {0}")]
    Boundary(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("chain error at step {step}: {msg}")]
    Chain { step: usize, msg: String },
    #[error("degenerate tuple: {0}")]
    Degenerate(String),
    #[error("not a member of the class: {0}")]
    Class(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("infeasible scale: {0}")]
    Scale(String),
    #[error("unknown catalog id: {0}")]
    Id(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
