use thiserror::Error;

/// Errors raised by field evaluation, identity checks, solvers and experiments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in `{subterm}`: {reason}")]
    Domain { subterm: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid catalog parameters for `{name}`: {reason}")]
    CatalogParams { name: String, reason: String },

    #[error("negative input: {0}")]
    NegativeInput(String),

    #[error("invalid exponent p = {0}: need 1 < p < inf")]
    InvalidExponent(f64),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("parse error at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },

    #[error("zero denominator in Rayleigh quotient")]
    ZeroDenominator,

    #[error("weight must be strictly positive on interior nodes (min {min})")]
    IndefiniteWeight { min: f64 },

    #[error(
        "descent did not converge after {iterations} iterations (gradient norm {grad_norm:e})"
    )]
    NonConvergence { iterations: usize, grad_norm: f64 },

    #[error("iteration failure: {0}")]
    IterationFailure(String),

    #[error("admissibility violation at {} point(s); first: {}", .violations.len(), .violations.first().map(String::as_str).unwrap_or("-"))]
    AdmissibilityViolation { violations: Vec<String> },

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("residual too large: {what} = {value:e} (tolerance {tolerance:e})")]
    ResidualTooLarge {
        what: String,
        value: f64,
        tolerance: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(subterm: impl ToString, reason: impl Into<String>) -> Self {
        Error::Domain {
            subterm: subterm.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by fields or configurations that fail a hypothesis
    /// rather than by numerics.
    pub fn is_admissibility(&self) -> bool {
        matches!(
            self,
            Error::AdmissibilityViolation { .. }
                | Error::HypothesisViolation(_)
                | Error::IndefiniteWeight { .. }
                | Error::ResidualTooLarge { .. }
        )
    }
}
