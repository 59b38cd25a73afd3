//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element is not a unit")]
    NotAUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricError {
    /// The inverse system `g^{ij} gtilde_{jk} = delta_{ik}` has no solution.
    #[error("metric is not invertible")]
    NotInvertible,
    /// The middle-coefficient form `gtilde` does not exist because the
    /// commutation matrix of the calculus is singular.
    #[error("metric has no middle-coefficient form (calculus not right parallelisable)")]
    NoMiddleForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SigmaError {
    /// The right-Leibniz system for sigma is inconsistent, or its solution is
    /// not a bimodule map: Gamma is not a bimodule connection.
    #[error("no braiding map exists for this connection")]
    NoSigma,
    /// The solution space has positive dimension. Reported as a diagnostic
    /// rather than silently picking a representative.
    #[error("braiding map is not unique (solution space of dimension {0})")]
    AmbiguousSigma(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown fixture id `{0}`")]
    UnknownFixture(String),
    #[error("fixture data is malformed: {0}")]
    Malformed(String),
}
