use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis budget exceeded: {what} needs {needed} basis vectors, budget is {budget}")]
    Budget { what: String, needed: usize, budget: usize },
    #[error("degree {degree} is outside the truncation range 0..={max}")]
    Degree { degree: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map does not descend to the quotient: {0}")]
    NotDescending(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
