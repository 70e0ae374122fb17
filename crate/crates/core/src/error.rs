use thiserror::Error;

/// Errors raised anywhere in the pipeline. The variants split into input
/// problems (parse, usage) and rejections of well-formed input that breaks
/// an invariant or a precondition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("edge label {label} appears {count} times (expected exactly twice)")]
    EdgeMultiplicity { label: u32, count: usize },
    #[error("diagram is not planar: {0}")]
    NonPlanar(String),
    #[error("ambiguous orientation: {0}")]
    AmbiguousOrientation(String),
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("{crossings} crossings exceeds the state-sum limit of {limit}")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("move not applicable: {0}")]
    InapplicableMove(String),
    #[error("invalid surgery presentation: {0}")]
    Presentation(String),
    #[error("invalid tangle: {0}")]
    Tangle(String),
    #[error("invalid closure: {0}")]
    Closure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether this error came from malformed input rather than a rejected
    /// computation. The CLI maps the two classes to different exit codes.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
