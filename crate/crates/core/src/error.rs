use thiserror::Error;

use crate::quad::QuadResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// tan_p evaluated where cos_p vanishes.
    #[error("pole: cos_p vanishes at x = {x}")]
    Pole { x: f64 },

    /// An iterative scheme did not converge. This indicates a defect,
    /// not a user error.
    #[error("{what} did not converge after {iterations} iterations (last residual {residual:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// The integrand produced NaN at an abscissa.
    #[error("integrand evaluated to NaN at x = {x}")]
    Evaluation { x: f64 },

    /// Adaptive quadrature hit its panel cap (or could not subdivide further)
    /// before reaching the requested tolerance. The partial result is kept.
    #[error("quadrature did not reach tolerance {tol:e} (estimate {:e} after {} panels)", partial.err_est, partial.subdivisions)]
    NonConvergence { partial: QuadResult, tol: f64 },

    /// No truncation point in the doubling sequence met the tail criterion.
    #[error("no truncation point up to {last_alpha} brings the tail bound ({last_bound:e}) below {target:e}")]
    TailNotReached {
        last_alpha: f64,
        last_bound: f64,
        target: f64,
    },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
