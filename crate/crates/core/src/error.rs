use thiserror::Error;

/// A text-format error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),

    #[error("not a knot: {components} components")]
    NotAKnot { components: usize },

    #[error("multi-component rosette: n = {0} is divisible by 3")]
    MultiComponentRosette(i64),

    #[error("invalid braid: {0}")]
    Braid(String),

    #[error("template: {0}")]
    Template(String),

    #[error("twist spec: {0}")]
    TwistSpec(String),

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("diagram has {crossings} crossings, brute-force limit is {limit}")]
    TooLarge { crossings: usize, limit: usize },

    #[error("{0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
