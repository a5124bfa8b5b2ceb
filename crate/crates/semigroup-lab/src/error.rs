//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of validity of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Newton iteration failed to reach the residual tolerance.
    #[error("no convergence after {steps} Newton steps (residual {residual:.3e})")]
    NoConvergence { steps: usize, residual: f64 },

    /// Newton damping could not keep the iterate inside the parameter domain.
    #[error("Newton damping left the parameter domain (target {target_re:.6e}{target_im:+.6e}i)")]
    DomainEscape { target_re: f64, target_im: f64 },

    /// An orbit inversion failed at a specific time sample.
    #[error("orbit inversion failed at t = {t}: {source}")]
    OrbitAt {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    /// A fit was requested on fewer samples than the method needs.
    #[error("insufficient samples: {have} inside the window, need at least {need}")]
    InsufficientSamples { have: usize, need: usize },

    /// A chain parameter exceeds the exactly representable integer range of f64.
    #[error("overflow: {0} exceeds the exactly representable f64 integer range")]
    Overflow(String),

    /// The model carries geometry only and cannot compute orbits.
    #[error("model '{0}' has no orbit capability (geometry only)")]
    NoOrbitCapability(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
