use thiserror::Error;

use crate::matching::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edges {0} and {1} share an endpoint")]
    SharedEndpoint(Edge, Edge),

    #[error("label {label} outside 1..={max}")]
    LabelOutOfRange { label: u16, max: u16 },

    #[error("coverage violation: {0}")]
    Coverage(String),

    #[error("edges {0} and {1} cross")]
    Crossing(Edge, Edge),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("edge {0} is not in the matching")]
    EdgeNotFound(Edge),

    #[error("gap {gap} outside 0..={max}")]
    InvalidGap { gap: usize, max: usize },

    #[error("invalid flippable partition: {0}")]
    InvalidPartition(String),

    #[error("malformed embedding: {0}")]
    MalformedEmbedding(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("{0} requires {1}")]
    Domain(&'static str, String),

    #[error("k = {k} exceeds the configured bound {max}")]
    ResourceBound { k: usize, max: usize },

    #[error("estimated {needed_mb} MB exceeds the memory cap of {cap_mb} MB")]
    MemoryCap { needed_mb: u64, cap_mb: u64 },

    #[error("not an I-matching")]
    NotIMatching,
}

pub type Result<T> = std::result::Result<T, Error>;
