use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Problems found while reading the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge {
        line: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange {
        line: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("unexpected end of input: {expected}")]
    UnexpectedEof { expected: String },
}

impl ParseError {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }
}

/// Structural defects of a vertex sequence claimed to be a path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one vertex")]
    Empty,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("vertex {0} repeats")]
    RepeatedVertex(VertexId),
    #[error("edge {0} does not join consecutive path vertices")]
    EdgeMismatch(EdgeId),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("terminal {vertex} out of range (n = {n})")]
    TerminalOutOfRange { vertex: VertexId, n: usize },
    #[error("exact long-path search needs at most {cap} vertices in the terminal's component (found {found})")]
    GraphTooLargeForExactLongPath { cap: usize, found: usize },
    #[error("universal family for m = {m}, r = {r} is outside the configured limits")]
    LimitsExceeded { m: usize, r: usize },
    #[error("instance too large for the exhaustive oracle: {0}")]
    InstanceTooLargeForOracle(String),
    #[error("universality check guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("composition needs at least one instance")]
    EmptyComposition,
    #[error("cannot place {m} edges on {n} vertices (at most {max})")]
    InfeasibleEdgeCount { n: usize, m: usize, max: usize },
    #[error("inconsistent planted shape: {0}")]
    InconsistentShape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
