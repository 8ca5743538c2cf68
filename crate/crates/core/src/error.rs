use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A set of quantum numbers violates an angular-momentum coupling rule.
    #[error("invalid quantum numbers: {0}")]
    Validation(String),

    #[error("incompatible units: cannot convert {from} ({from_dim}) to {to} ({to_dim})")]
    Unit {
        from: String,
        from_dim: String,
        to: String,
        to_dim: String,
    },

    #[error("unknown unit '{0}'")]
    UnknownUnit(String),

    /// Two point charges or the two centres of mass coincide.
    #[error("singular geometry: {0}")]
    Singular(String),

    /// Quadrature, cross-check or iteration failure.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CoreError {
    /// True for failures caused by the numerics rather than the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(self, CoreError::Numeric(_))
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
