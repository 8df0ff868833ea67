use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma evaluated within `1e-12` of a non-positive integer.
    #[error("gamma pole: argument {0} is a non-positive integer")]
    PoleArgument(f64),

    /// A closed form hits a Gamma pole or an excluded value (e.g. `α = 1`).
    #[error("near pole: {what} = {value}")]
    NearPole { what: &'static str, value: f64 },

    /// `b ≈ c`, or `b ≈ 1` / `c ≈ 1` where a formula divides by `b - 1`.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The weighted series diverges (tail exponent `σ ≥ -1`).
    #[error("divergent sum: tail exponent {exponent} >= -1")]
    DivergentSum { exponent: f64 },

    #[error("tolerance {tol:e} unreachable after {terms} terms (error bound {bound:e})")]
    ToleranceUnreachable { tol: f64, bound: f64, terms: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Short machine-readable status name, as used in scan reports.
    pub fn status(&self) -> &'static str {
        match self {
            Error::PoleArgument(_) | Error::NearPole { .. } => "NearPole",
            Error::DegenerateParameters(_) => "DegenerateParameters",
            Error::DomainViolation(_) => "DomainViolation",
            Error::DivergentSum { .. } => "DivergentSum",
            Error::ToleranceUnreachable { .. } => "ToleranceUnreachable",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
