use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("root set is not closed under conjugation: {0}")]
    NotConjugateClosed(String),

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("polynomial of degree at least 1 required")]
    DegreeTooLow,

    #[error(
        "ill-conditioned root extraction: reconstruction error {error:e} exceeds {tolerance:e}"
    )]
    IllConditioned { error: f64, tolerance: f64 },

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("closed-form system is singular (condition number {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("expected {expected} initial values, got {got}")]
    InitLength { expected: usize, got: usize },

    #[error("iterate {index} = {value} leaves the domain {domain}")]
    Escape {
        index: usize,
        value: f64,
        domain: String,
    },

    #[error("invalid candidate function: {0}")]
    InvalidCandidate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures caused by floating-point conditioning rather than
    /// malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned { .. }
                | Error::NoConvergence
                | Error::SingularSystem { .. }
                | Error::Internal(_)
        )
    }
}
