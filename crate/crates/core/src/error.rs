use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters r={r}, i={i}: {reason}")]
    InvalidParameters { r: usize, i: usize, reason: &'static str },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {partition} violates the multiplicity bounds for (r,i)=({r},{i})")]
    MultiplicityBound { partition: String, r: usize, i: usize },

    #[error("partition {partition} is not ({r},{i})-neighborly")]
    NotNeighborly { partition: String, r: usize, i: usize },

    #[error("malformed hypergraph: {0}")]
    MalformedHypergraph(String),

    #[error("hypergraph is not simple")]
    NotSimple,

    #[error("{what} count {count} exceeds the limit of {limit}")]
    SizeLimit { what: &'static str, count: usize, limit: usize },

    #[error("invalid weight assignment: {0}")]
    InvalidWeight(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("computation routes disagree at q^{n}: {left} vs {right}")]
    RouteMismatch { n: usize, left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;
