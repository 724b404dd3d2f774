//! Error taxonomy shared across the crate.
//!
//! The variants map onto the exit-code classes the CLI exposes: configuration
//! problems, domain violations, numerical failures, and construction
//! infeasibility (the forcing builder ran out of room).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("action {value:e} outside chart range [{min:e}, {max:e}]")]
    ChartRange { value: f64, min: f64, max: f64 },

    #[error("step size underflow at t = {t:e}: {context}")]
    StepSizeUnderflow { t: f64, context: String },

    #[error("non-finite state at t = {t:e}: {context}")]
    Overflow { t: f64, context: String },

    #[error("angle non-monotone at t = {t:e}; the angle rate is not dominated by h'(I) — use a larger starting action")]
    NonMonotoneAngle { t: f64 },

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("lemma violation: {0}")]
    LemmaViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit-code class used by the CLI: 2 infeasible/scientific, 3 numerical, 4 config.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) => 4,
            Error::Infeasible(_) | Error::LemmaViolation(_) => 2,
            Error::Numerical(_)
            | Error::ChartRange { .. }
            | Error::StepSizeUnderflow { .. }
            | Error::Overflow { .. }
            | Error::NonMonotoneAngle { .. } => 3,
        }
    }
}
