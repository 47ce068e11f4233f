use thiserror::Error;

/// Errors produced by series construction, summation and verification.
#[derive(Debug, Error)]
pub enum QError {
    #[error("coefficient vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("scale_monomial requires a nonzero scalar")]
    ZeroScale,

    #[error("cannot invert zero-looking series (no nonzero coefficient below the guaranteed order)")]
    NonInvertible,

    #[error("compose_power requires k >= 1, got {0}")]
    InvalidPower(i64),

    #[error("infinite product requires step d >= 1, got {0}")]
    DivergentProduct(i64),

    #[error("eta quotient has non-integral eta prefactor (sum of delta*r_delta = {0} is not divisible by 24)")]
    EtaPrefactor(i64),

    #[error("non-convergent stream: {0}")]
    NonConvergent(String),

    #[error("Cesaro non-stabilizing stream: {0}")]
    CesaroUnstable(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown series `{0}`")]
    UnknownSeries(String),
}
