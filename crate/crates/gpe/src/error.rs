use coboson_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GpeError {
    /// The problem description is malformed or inconsistent.
    #[error("invalid problem: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("numeric failure at step {step} (t = {time:e}): {detail}")]
    Numeric { step: u64, time: f64, detail: String },

    #[error("no convergence after {iterations} iterations; last relative energy changes: {history:?}")]
    NotConverged { iterations: usize, history: Vec<f64> },
}

impl GpeError {
    pub fn is_numeric(&self) -> bool {
        matches!(self, GpeError::Numeric { .. } | GpeError::NotConverged { .. }) || matches!(self, GpeError::Core(e) if e.is_numeric())
    }
}

pub type Result<T> = std::result::Result<T, GpeError>;
