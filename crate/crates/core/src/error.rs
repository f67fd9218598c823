use thiserror::Error;

/// Errors raised by graph construction, the solvers and the constructions.
///
/// Checkers never return these for a failed check; a failed check is a
/// verdict. Errors are reserved for broken preconditions and budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} {value} out of range (limit {limit})")]
    Range {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid minor model: {0}")]
    Model(String),

    #[error("superlinearity violated: {0}")]
    Superlinearity(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that come from a size or search budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
