use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size cap (enumeration size, qubit count) would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Every ensemble weight is zero, so no decision exists.
    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    /// A weight or ratio is unbounded at this accuracy.
    #[error("unbounded value: {0}")]
    Unbounded(String),

    /// The quantum state does not satisfy an operation's precondition.
    #[error("invalid state: {0}")]
    State(String),

    /// The postselected branch has zero probability.
    #[error("postselection impossible: accepted branch has probability {0:e}")]
    PostselectionImpossible(f64),

    #[error("no decision boundary: {0}")]
    NoBoundary(String),

    /// A numerical routine could not reach its tolerance.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
