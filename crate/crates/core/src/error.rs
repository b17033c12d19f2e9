use thiserror::Error;

use crate::vertex_set::VERTEX_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("universe size {n} exceeds the cap of {VERTEX_CAP}")]
    UniverseTooLarge { n: usize },

    #[error("universe size {n} exceeds the enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },

    #[error("edge {index} is empty")]
    EmptyEdge { index: usize },

    #[error("edge {index} duplicates edge {first}")]
    DuplicateEdge { index: usize, first: usize },

    #[error("edge {inner} is contained in edge {outer}")]
    Containment { inner: usize, outer: usize },

    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("edge index {index} out of range (m = {m})")]
    EdgeIndex { index: usize, m: usize },

    #[error("vertex {vertex} out of range (n = {n})")]
    Vertex { vertex: usize, n: usize },

    #[error("edge {index} is the whole vertex set; its complement is empty")]
    FullEdge { index: usize },

    #[error("hypergraph is not uniform")]
    NotUniform,

    #[error("vertex {vertex} lies in edge {index}")]
    VertexInEdge { index: usize, vertex: usize },

    #[error("set is not a versal of edge {index}")]
    NotAVersal { index: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("infeasible scope: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
