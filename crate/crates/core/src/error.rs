use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("node pair must have distinct endpoints, got ({0}, {0})")]
    SameNode(usize),

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("community {0} is the node's current community")]
    SameCommunity(usize),

    #[error("community {0} does not exist")]
    NoSuchCommunity(usize),

    #[error("performance is undefined for graphs with fewer than 2 nodes (n = {0})")]
    TooFewNodes(usize),

    #[error("modularity is undefined for a graph without edges")]
    NoEdges,

    #[error("exhaustive search refused: n = {n} exceeds the limit of {max_n}")]
    OracleTooLarge { n: usize, max_n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
