use thiserror::Error;

use crate::network::{ArcId, NodeId};

/// A network or state vector that violates the data-model invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("a network needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("node {node} is outside 1..={node_count}")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("source and sink are both node {0}")]
    SourceIsSink(NodeId),
    #[error("arc {0} is a self-loop")]
    SelfLoop(ArcId),
    #[error("arc {0} is declared more than once")]
    DuplicateArc(ArcId),
    #[error("arc ids must be 1..={expected_max} without gaps; arc {missing} is missing")]
    MissingArc { missing: ArcId, expected_max: usize },
    #[error("arc {0} does not exist")]
    UnknownArc(ArcId),
    #[error("sum of max capacities overflows a 64-bit integer")]
    CapacityOverflow,
    #[error("state vector has {got} components, network has {expected} arcs")]
    LengthMismatch { expected: usize, got: usize },
    #[error("arc {arc}: value {value} exceeds max capacity {max}")]
    ExceedsCapacity { arc: ArcId, value: u64, max: u64 },
    #[error("arc {arc}: invalid distribution ({reason})")]
    BadDistribution { arc: ArcId, reason: String },
}

/// Failure to read a network or cut file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] NetworkError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}
