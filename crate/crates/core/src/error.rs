use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("malformed padded pair: {0}")]
    MalformedPair(String),

    #[error("{what} exceeded the budget of {budget}")]
    Budget { what: String, budget: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("no verified structure: {0}")]
    Unverified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, budget: usize) -> Self {
        Error::Budget {
            what: what.into(),
            budget,
        }
    }
}
