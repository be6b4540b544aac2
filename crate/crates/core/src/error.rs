use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested quantity lies outside the region where it is defined
    /// (divergent integral, forbidden parameter range).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("argument {0} is a pole of the gamma function")]
    Pole(String),

    #[error("contour error: {0}")]
    Contour(String),

    #[error("rank error: {0}")]
    Rank(String),

    #[error("solver error: {0}")]
    Solver(String),
}
