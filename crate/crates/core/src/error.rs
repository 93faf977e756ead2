use thiserror::Error;

use crate::graph::{Color, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} is outside the vertex set (id space {id_space})")]
    VertexOutOfRange { vertex: Vertex, id_space: usize },
    #[error("edge {0}-{1} has an endpoint outside the graph's vertex set")]
    DanglingEdge(Vertex, Vertex),
    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfRange { color: Color, palette: usize },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("{what} = {requested} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, requested: usize, cap: usize },
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("split contract violated: vertex {vertex} in A has {count} neighbors in B, bound is {bound}")]
    SplitViolation { vertex: Vertex, count: usize, bound: usize },
    #[error("treedepth {depth} exceeds cap {cap}")]
    TreedepthExceeded { depth: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("solver produced an invalid witness: {0}")]
    InvalidWitness(String),
}
