use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    /// Parameters outside the admissible regime `L/n < C <= L`, `0 <= F <= 1`.
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("node {0} has no neighbours; relative costs are undefined there")]
    IsolatedNode(usize),

    #[error("profile has {got} entries but the graph has {expected} nodes")]
    ProfileLength { expected: usize, got: usize },

    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("the potential function is only defined on cycle graphs")]
    NotACycle,

    #[error("the potential threshold needs a positive friendship factor")]
    ZeroFriendship,

    #[error("{n} nodes exceeds the enumeration cap of {cap}; raise the cap or use a smaller graph")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
