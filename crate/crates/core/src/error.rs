use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("invalid `{field}`: {reason}")]
    Domain {
        field: &'static str,
        reason: &'static str,
    },

    /// An iterative method did not reach its tolerance.
    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A synthesis or extraction setup violates a sampling constraint.
    #[error("configuration violates {constraint}: {detail}")]
    Configuration {
        constraint: &'static str,
        detail: &'static str,
    },

    /// A requested frequency falls outside the sampled band.
    #[error("frequency {freq_hz} Hz lies outside the band ±{nyquist_hz} Hz")]
    Range { freq_hz: f64, nyquist_hz: f64 },

    #[error("estimation failed: {0}")]
    Estimation(&'static str),
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: &'static str) -> Self {
        Error::Domain { field, reason }
    }

    /// True for failures of an iterative numerical method: a solver that
    /// did not converge or an estimator that found no interior minimum.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Estimation(_))
    }
}
