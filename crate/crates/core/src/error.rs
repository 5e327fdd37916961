use thiserror::Error;

/// Errors raised by the algebra constructions and checkers.
///
/// Mathematical failures that come with a witness are reported through
/// [`crate::AxiomReport`] instead; this type covers malformed input,
/// violated preconditions and truncation limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{hypothesis} failed: {detail}")]
    Hypothesis { hypothesis: String, detail: String },

    #[error("product of degree {degree} exceeds truncation degree {limit}")]
    TruncationOverflow { degree: usize, limit: usize },

    #[error("no candidate found after {attempts} attempts: {detail}")]
    Exhausted { attempts: usize, detail: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn hypothesis(hypothesis: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis: hypothesis.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
