use thiserror::Error;

use crate::lattice::Dim;

/// Errors produced by the analysis routines and the file parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: Dim, found: Dim },

    #[error("budget exceeded while {during}: needed {needed}, limit {limit}")]
    BudgetExceeded {
        during: String,
        needed: String,
        limit: String,
    },

    #[error("time limit exceeded while {during}")]
    TimeLimit { during: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn budget(during: impl Into<String>, needed: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            during: during.into(),
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for the two resource-exhaustion variants.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TimeLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
