use thiserror::Error;

/// Errors raised by the measure catalog, the path engine and the analytics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SupouError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The jump measure restricted to `(eps, inf)` carries no mass.
    #[error("empty restriction: no jump mass above eps = {eps}")]
    EmptyRestriction { eps: f64 },

    /// A measure that must be finite has infinite mass.
    #[error("infinite mass: {0}")]
    InfiniteMass(String),

    /// A caller violated an ordering or shape contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Quadrature or root finding failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, SupouError>;

pub(crate) fn domain(msg: impl Into<String>) -> SupouError {
    SupouError::Domain(msg.into())
}
