use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {n} vertices, the supported maximum is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what} is limited to n <= {limit}, got n = {n}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },
    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    NotASubgraph(usize, usize),
    #[error("edge set is not a spanning tree: {0}")]
    NotATree(&'static str),
    #[error("invalid parameters for {family}: {detail}")]
    BadFamily { family: &'static str, detail: &'static str },
    #[error("orbit length {given} of vertex {vertex} disagrees with the automorphism oracle ({actual})")]
    OrbitMismatch { vertex: usize, given: usize, actual: usize },
    #[error("internal arithmetic invariant violated: {0}")]
    Internal(&'static str),
}
