use thiserror::Error;

use crate::graph::{Color, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("measured maximum degree {measured} exceeds declared bound {declared}")]
    DegreeBound { measured: usize, declared: usize },
    #[error("vertex {vertex} assigned layer {layer}, valid range is 1..={n_layers}")]
    LayerOutOfRange { vertex: Vertex, layer: usize, n_layers: usize },
    #[error("color {color} for vertex {vertex} is not in the palette")]
    ColorOutsidePalette { vertex: Vertex, color: Color },
    #[error("vertex {0} has no color")]
    Uncolored(Vertex),
    #[error("{0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("embedding error: {0}")]
    Embedding(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("constructed decomposition failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("invalid tree decomposition: {0}")]
    Decomposition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnlargeError {
    #[error("linkage entry {entry}: {reason}")]
    Linkage { entry: usize, reason: String },
    #[error("invalid tree decomposition: {0}")]
    Decomposition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input has {n} vertices, oracle limit is {max}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("pipeline invariant violated: {message} (component {component:?})")]
    Invariant { message: String, component: Vec<Vertex> },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Enlarge(#[from] EnlargeError),
}

impl PipelineError {
    pub(crate) fn invariant(message: impl Into<String>, component: &[Vertex]) -> Self {
        PipelineError::Invariant { message: message.into(), component: component.to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}
