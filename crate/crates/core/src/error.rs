use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no edges")]
    NoEdges,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node {node} out of range for network with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("uncontrollable instance: driving every node controls only {dimension} of {n} nodes")]
    Uncontrollable { dimension: usize, n: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
