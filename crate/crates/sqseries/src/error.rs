use num_complex::Complex64;

/// Errors shared by the quadrature, series and transform layers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Inputs violate the convergence region a formula was stated for.
    #[error("region violation: {0}")]
    RegionViolation(String),

    /// Inputs are outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The refinement budget ran out before the tolerance was met.
    /// Carries the best estimate so callers can still inspect it.
    #[error("no convergence after {nodes_used} evaluations (best {value}, est. error {error_estimate:.3e})")]
    NoConvergence {
        value: Complex64,
        error_estimate: f64,
        nodes_used: u64,
    },

    /// The integrand produced a non-finite value at a quadrature node.
    #[error("integrand is not finite at t = {at}")]
    NonFinite { at: f64 },

    /// Requested rule order outside the supported range.
    #[error("unsupported rule order {0} (supported 2..=384)")]
    UnsupportedOrder(usize),

    /// A derivative list had the wrong length.
    #[error("derivative list has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    /// The compact Fourier form degenerates when e^{2i*alpha} = 1.
    #[error("degenerate alpha: |e^(2i*alpha) - 1| < 1e-8; use the two-term form")]
    DegenerateAlpha,

    /// Closed-form OGF derivatives are not available for `Custom` sequences.
    #[error("closed-form derivatives are unavailable for custom sequences")]
    UnsupportedDerivative,

    /// A quadrature configuration failed validation.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
