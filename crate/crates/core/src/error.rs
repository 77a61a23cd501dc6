use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("vertex {vertex} outside 1..={order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("unknown builtin graph `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid inducer ({u},{i}),({v},{j}): {reason}")]
    InvalidInducer {
        u: usize,
        i: usize,
        v: usize,
        j: usize,
        reason: &'static str,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a Hamilton cycle: {0}")]
    NotHamiltonCycle(String),

    #[error("stale snapshot token")]
    StaleSnapshot,

    #[error("q-cell of {0} is already Zero")]
    CellAlreadyZero(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("oracle budget exceeded: n = {n}, limit {limit}")]
    OracleBudget { n: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
