use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a permutation: position {0} is hit twice or never")]
    NotBijection(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("graph is not symmetric")]
    NotSymmetric,
    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("second eigenvalue is degenerate; the Fiedler vector is not unique")]
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("stream truncated in the header")]
    TruncatedHeader,
    #[error("stream truncated in row {row}")]
    Truncated { row: usize },
    #[error("zero gap in row {row}")]
    ZeroGap { row: usize },
    #[error("neighbor out of range in row {row}")]
    NeighborOutOfRange { row: usize },
    #[error("header declares {declared} entries but the payload holds {found}")]
    EntryCount { declared: u64, found: u64 },
    #[error("code word too long in row {row}")]
    Overlong { row: usize },
    #[error("row {row} lists itself")]
    SelfLoop { row: usize },
    #[error("graph has no entries")]
    NoEntries,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
