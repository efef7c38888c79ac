use thiserror::Error;

use crate::kexpr::{NodeId, ParseError};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} thresholds, got {got}")]
    ThresholdCount { expected: usize, got: usize },
    #[error("{field} = {value} exceeds the vertex count {n}")]
    ParameterRange { field: &'static str, value: usize, n: usize },
    #[error("problem variant requires field `{0}`")]
    MissingField(&'static str),
    #[error("graph is not a tree: {0}")]
    NotATree(&'static str),
    #[error("vertex {vertex} has threshold {threshold} outside [1, {degree}]")]
    ThresholdAssumption { vertex: usize, threshold: u32, degree: usize },
    #[error("latency bound must be at least 1 in strict mode")]
    LatencyTooSmall,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed expression: {0}")]
    Malformed(String),
    #[error("eta at node {node} is only partially redundant; supply an irredundant expression")]
    PartialRedundancy { node: NodeId },
    #[error("expression is not irredundant: eta({a},{b}) at node {node} repeats edge {{{u}, {v}}}")]
    Redundant { node: NodeId, a: u32, b: u32, u: String, v: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("expression has {expr} vertices but the graph has {graph}")]
    VertexCountMismatch { expr: usize, graph: usize },
    #[error("instance has {n} vertices, above the brute-force limit of {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("value {0} is out of range for the selection")]
    SelectionRange(usize),
}
