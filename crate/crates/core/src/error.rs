use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex count must be at least 1")]
    EmptyDigraph,

    #[error("digraph has {n} vertices; vertex sets are limited to 64")]
    TooManyVertices { n: usize },

    #[error("arc #{index} ({u},{v}): endpoint out of range for {n} vertices")]
    ArcOutOfRange { index: usize, u: usize, v: usize, n: usize },

    #[error("arc #{index} ({u},{u}): self-loops are not allowed")]
    SelfLoop { index: usize, u: usize },

    #[error("arc #{index} ({u},{v}): duplicate of an earlier arc")]
    DuplicateArc { index: usize, u: usize, v: usize },

    #[error("vertex set contains vertex {vertex}, but the digraph has {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("capacity exceeded: {what} (limit {limit}, requested {requested})")]
    Capacity {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("vertex counts differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{x} has no inverse modulo {n}")]
    NotInvertible { x: u64, n: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::TooManyVertices { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
