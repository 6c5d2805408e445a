use thiserror::Error;

/// Crate-wide error type.
///
/// Algorithm preconditions, malformed inputs and budget guards are ordinary
/// errors. `TheoremViolation` and `InternalInvariantViolation` are different:
/// they mean an exhaustively verified fact or a proof-guaranteed step failed,
/// which is either an implementation bug or a genuine finding, and they are
/// never retried or swallowed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no such object: {0}")]
    NotFound(String),

    #[error("color {color} is not in the list of vertex {vertex}")]
    ColorNotInList { vertex: usize, color: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("coloring is not total: vertex {0} is uncolored")]
    PartialColoring(usize),

    #[error("characterization failed on an unsatisfiable instance: {0}")]
    TheoremViolation(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("enumeration budget exceeded: estimated {estimate} covers, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("cover is not an unsatisfiable witness for the requested mode")]
    NotAWitness,

    #[error("unknown example id: {0}")]
    UnknownExample(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InternalInvariantViolation(msg.into())
    }
}
