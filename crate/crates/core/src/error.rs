use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested estimator or sampler needs information the configured
    /// visibility level does not reveal.
    #[error("capability error: {0}")]
    Capability(String),

    #[error("node {0} is isolated")]
    IsolatedNode(NodeId),

    #[error("node {0} is out of range")]
    UnknownNode(NodeId),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is bipartite")]
    Bipartite,

    #[error("operation requires a directed graph")]
    NotDirected,

    #[error("empty sample stream")]
    EmptyStream,

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
