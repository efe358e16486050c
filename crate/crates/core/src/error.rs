use thiserror::Error;

/// Errors raised by graph construction, chip-firing and the enumeration searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("board dimensions must satisfy m >= 2 and n >= 2 (got m={m}, n={n})")]
    BoardTooSmall { m: usize, n: usize },

    #[error("complete graph needs at least 2 vertices (got {0})")]
    TooFewVertices(usize),

    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}; only simple graphs are supported")]
    DuplicateEdge(usize, usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("operation requires a grid-backed graph")]
    NotGrid,

    #[error("row/column index {index} out of range (limit {limit})")]
    GridIndex { index: usize, limit: usize },

    #[error("cut side must be a nonempty proper subset of the vertices")]
    TrivialCut,

    #[error("divisor has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} is in debt ({value}) but only the base vertex may be")]
    DebtAwayFromBase { vertex: usize, value: i64 },

    #[error("divisor is not effective")]
    NotEffective,

    #[error("vertex set is not independent ({0} and {1} are adjacent)")]
    NotIndependent(usize, usize),

    #[error("no effective divisor is equivalent to the input")]
    NoEffectiveRepresentative,

    #[error("{what} cap exceeded: needs {needed}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
