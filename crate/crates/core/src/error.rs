use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit: {what} = {value} exceeds {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("malformed graph: {0}")]
    Parse(String),

    #[error("loop-marked graph not allowed here: {0}")]
    LoopMarked(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown property: {0}")]
    UnknownProperty(String),

    #[error("property evaluation failed for `{property}` on graph {graph6}: {reason}")]
    Evaluation {
        property: String,
        graph6: String,
        reason: String,
    },

    #[error("budget exceeded: {needed} subset evaluations requested, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("invalid birkhoff matrix: {0}")]
    InvalidMatrix(String),

    #[error("not an edge: {{{0}, {1}}}")]
    NotAnEdge(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Internal-consistency failures signal a bug or a falsified invariant, as
    /// opposed to bad input.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }

    pub(crate) fn too_large(what: &'static str, value: usize, max: usize) -> Self {
        Error::TooLarge { what, value, max }
    }
}
