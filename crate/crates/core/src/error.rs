use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate}")]
    Quadrature { estimate: f64, error_estimate: f64 },

    #[error(
        "step-size guard violated: intensity {rate} * dt {dt} = {} exceeds {limit}; use a smaller dt",
        rate * dt
    )]
    StepTooLarge { rate: f64, dt: f64, limit: f64 },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("analytic reliability is only defined for the decoupled case: {0}")]
    Unsupported(String),

    #[error("unknown sweep parameter `{0}`; accepted names: {names}", names = crate::reliability::SweepParameter::NAMES.join(", "))]
    UnknownParameter(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
