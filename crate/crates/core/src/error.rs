use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("edge {0} {1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("vertex {vertex} has color 0; colors are positive")]
    InvalidColor { vertex: usize },
    #[error("vertex {0} has no color")]
    Uncolored(usize),
    #[error("coloring covers {found} vertices, graph has {expected}")]
    ColoringSize { expected: usize, found: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("graph contains a K4 minor")]
    NotK4MinorFree,
    #[error("graph has no edges")]
    Edgeless,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("coloring is not proper: edge {0} {1} is monochromatic")]
    NotProper(usize, usize),
    #[error("coloring is not rainbow vertex-disconnected (pair {0} {1} has no rainbow cut)")]
    NotRainbowDisconnected(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance exceeds the desk-scale cap: {0}")]
    CapExceeded(String),
}
