use thiserror::Error;

use crate::diagram::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("state has {got} bits but the diagram has {expected} crossings")]
    StateLength { expected: usize, got: usize },

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("theory mismatch: {0}")]
    TheoryMismatch(String),

    #[error("unsupported base ring: {0}")]
    UnsupportedRing(String),

    #[error("invalid specialization: {0}")]
    Specialization(String),

    #[error("invalid theory selector `{0}`")]
    Selector(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Script { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
