//! Weight-constrained shortest paths: a multi-criteria Bellman-Ford that
//! keeps a dominance front per node and step count, and an exhaustive
//! simple-path oracle to check it against.

mod brute;
mod graph;
mod solver;

use thiserror::Error;

use crate::pareto::ParetoError;

pub use brute::{brute_force_paths, DEFAULT_BRUTE_LIMIT};
pub use graph::{Edge, MultiWeightGraph, Query};
pub use solver::{bf_md, bf_md_with, decide, reconstruct_path, LabelTable, RunStats, SolveOptions, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("graph needs at least one weight dimension")]
    Dimension,
    #[error("node {node} out of range (graph has {n} nodes)")]
    InvalidNode { node: usize, n: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("edge {from}->{to} has a zero weight component")]
    NonPositiveWeight { from: usize, to: usize },
    #[error("arity mismatch: expected {expected} components, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("graph has {n} nodes, exhaustive search is limited to {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("front at node {node}, step {iteration} has {size} labels, limit is {limit}")]
    FrontBudget { node: usize, iteration: usize, size: usize, limit: usize },
    #[error("label ({label}) is not in the final front of node {node}")]
    LabelNotFound { node: usize, label: String },
    #[error("intermediate layers were not kept")]
    LayersNotRetained,
    #[error(transparent)]
    Pareto(#[from] ParetoError),
    #[error("internal error: {0}")]
    Internal(String),
}
