use thiserror::Error;

use crate::decision::Algorithm;
use crate::formula::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("assignment has {got} bits but the formula has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },

    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("algorithm {algorithm} does not apply: {reason}")]
    WrongAlgorithm { algorithm: Algorithm, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("constraint language is empty")]
    EmptyLanguage,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid instance file: {0}")]
    Format(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
