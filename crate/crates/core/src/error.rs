use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("no data")]
    Empty,
    #[error("{0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumbersError {
    #[error("combination sum has {terms} terms, budget is {budget}")]
    CombinationBudget { terms: u128, budget: u128 },
    #[error("formula produced a non-integral count: {0}")]
    NonIntegral(String),
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("thread pool: {0}")]
    Pool(String),
}
