use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the stage that
/// produces them so that pipeline reports can attribute failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("points span an affine space of dimension {found}, expected {expected}")]
    DimensionDeficient { expected: usize, found: usize },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan does not refine the normal fan of the polytope: {0}")]
    Incompatible(String),

    #[error("unbounded weight region: {0}")]
    UnboundedRegion(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency in {module}: {detail}")]
    Internal { module: &'static str, detail: String },

    #[error("resource cap reached: {0}")]
    ResourceCap(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(module: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            module,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
