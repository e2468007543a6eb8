use thiserror::Error;

/// Errors raised by graph construction, parsing, labeling validation and
/// the precondition checks of the constructors and rearrangement swaps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("labeling covers {labels} vertices but the graph has {vertices}")]
    SizeMismatch { labels: usize, vertices: usize },

    #[error("labels are not a bijection onto 1..={n}: duplicates {duplicates:?}, missing {missing:?}, out of range {out_of_range:?}")]
    NotBijection {
        n: usize,
        duplicates: Vec<usize>,
        missing: Vec<usize>,
        out_of_range: Vec<usize>,
    },

    #[error("expected a {expected} product, got {actual}")]
    WrongProductKind {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn pre(reason: impl Into<String>) -> Self {
        Error::Precondition(reason.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
