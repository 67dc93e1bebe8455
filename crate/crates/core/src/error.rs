use thiserror::Error;

/// Failures while decoding a graph from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("malformed graph6 header")]
    BadHeader,
    #[error("graph6 byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("graph6 bit stream truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 bit stream has {extra} trailing bytes")]
    TrailingData { extra: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("graph has {n} vertices, cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("line {line}: expected {what}")]
    Malformed { line: usize, what: &'static str },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{what}: size {got} exceeds cap {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("root finding did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NoConvergence { iterations: usize, max_residual: f64 },
    #[error("engines disagree on the permanental polynomial")]
    EngineMismatch,
    #[error("io: {0}")]
    Io(String),
    #[error("manifest mismatch: {0}")]
    Manifest(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, got: usize, cap: usize) -> Result<()> {
    if got > cap {
        Err(Error::CapExceeded { what, got, cap })
    } else {
        Ok(())
    }
}
