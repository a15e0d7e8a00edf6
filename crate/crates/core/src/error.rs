use thiserror::Error;

/// Errors raised by the exact-arithmetic and spectrum routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exhaustive routine was asked to go past its hard enumeration limit.
    #[error("{what}: enumeration budget exceeded ({detail})")]
    BudgetExceeded { what: &'static str, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    /// A point set handed to the classification code is not a Thomason subset
    /// of the truncation. `witness` names the offending point.
    #[error("ill-formed Thomason subset: {reason} (witness {witness})")]
    IllFormedThomason { reason: String, witness: String },

    /// A valid subset or function that the finite height cutoff cannot represent.
    #[error("not representable at this truncation: {0}")]
    NotRepresentable(String),

    /// Arithmetic produced something that exact theory rules out.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, detail: impl Into<String>) -> Self {
        Error::BudgetExceeded {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
