use crate::model::{NodeId, PathId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("lightpath {path}: {reason}")]
    InvalidPath { path: PathId, reason: String },

    #[error("operation requires a path topology")]
    NotPathTopology,

    #[error("node {node} is not an internal node of lightpath {path}")]
    NotInternal { node: NodeId, path: PathId },

    #[error("node {node} already holds {count} regenerator(s), cap is {cap}")]
    CapExceeded { node: NodeId, count: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("element has no covering set")]
    UncoverableElement,

    #[error("element belongs to {found} sets, frequency bound is {bound}")]
    FrequencyBoundExceeded { found: usize, bound: usize },

    #[error("unknown set id {0}")]
    UnknownSet(usize),

    #[error("weight doubling exponent exceeded {0}")]
    WeightOverflow(u32),

    #[error("oracle size limit exceeded: {0}")]
    OracleLimit(String),

    #[error("algorithm misbehaved: {0}")]
    InvalidAlgorithm(String),

    #[error("adversary case analysis failed: {0}")]
    UnmatchedCase(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("instance format: {0}")]
    Format(String),
}
