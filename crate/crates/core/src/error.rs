use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("{{{u},{v}}} is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("{what}: order {order} exceeds the supported limit of {limit}")]
    Capacity {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("construction spec is invalid: {}", .0.join("; "))]
    SpecValidation(Vec<String>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A checked post-condition did not hold. Seeing this means a bug or a
    /// false theorem, so it is never swallowed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, order: usize, limit: usize) -> Self {
        Error::Capacity { what, order, limit }
    }
}
