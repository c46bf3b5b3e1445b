use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("order {order} exceeds the supported maximum of {max}")]
    Capacity { order: usize, max: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("pattern syntax error at byte {offset}: {reason}")]
    PatternSyntax { offset: usize, reason: String },

    #[error("power iteration did not converge after {iterations} iterations (best rho {rho}, residual {residual:e})")]
    Convergence {
        rho: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("{source} (graph {graph6})")]
    InGraph { graph6: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// Whether the error stems from the caller's input rather than from a
    /// failed computation.
    pub fn is_argument_error(&self) -> bool {
        match self {
            Error::InGraph { source, .. } => source.is_argument_error(),
            Error::Convergence { .. } | Error::Io(_) => false,
            _ => true,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
