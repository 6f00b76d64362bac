//! Error taxonomy shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value violates its invariant.
    #[error("config error: {0}")]
    Config(String),

    /// Adaptive quadrature exhausted its subdivision budget. Carries the
    /// best estimate together with the achieved and requested error bounds.
    #[error(
        "quadrature did not converge: value {value:.12e}, achieved error bound \
         {achieved:.3e} exceeds tolerance {requested:.3e}"
    )]
    QuadratureNonConvergence {
        value: f64,
        achieved: f64,
        requested: f64,
    },

    /// A transform-domain denominator crosses zero at (or between) the
    /// sampled abscissae.
    #[error("singular denominator near zeta = {zeta:.6e}, s = {s:.6e}")]
    Singular { zeta: f64, s: f64 },

    /// Image evaluation failed at an inversion abscissa.
    #[error("image evaluation failed at abscissa {abscissa:.6e}: {source}")]
    ImageEval {
        abscissa: f64,
        #[source]
        source: Box<Error>,
    },

    /// A solver error annotated with the grid point that produced it.
    #[error("solver failed at grid point (mu = {mu:.6e}, tau = {tau:.6e}): {source}")]
    GridPoint {
        mu: f64,
        tau: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_abscissa(self, abscissa: f64) -> Error {
        Error::ImageEval {
            abscissa,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_grid_point(self, mu: f64, tau: f64) -> Error {
        Error::GridPoint {
            mu,
            tau,
            source: Box::new(self),
        }
    }
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}
