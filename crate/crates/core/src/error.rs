use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph is disconnected; trc is undefined")]
    Disconnected,
    #[error("coloring does not match graph: {0}")]
    ShapeMismatch(String),
    #[error("not a simple path: {0}")]
    NotAPath(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("required set {0} is empty")]
    DegenerateSet(&'static str),
    #[error("construction produced an invalid coloring: {0}")]
    InvalidConstruction(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
