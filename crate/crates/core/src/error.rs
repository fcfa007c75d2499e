//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation precondition was violated.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input signal rate does not match the discrete system rate.
    #[error("sample interval mismatch: system dt = {system_dt}, input dt = {input_dt}")]
    DtMismatch { system_dt: f64, input_dt: f64 },

    /// A recursion produced a non-finite value; `index` is the first bad sample.
    #[error("simulation diverged at sample {index} (t = {time} s)")]
    Diverged { index: usize, time: f64 },

    /// A ground-motion file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Two-column input whose time column is not uniformly spaced.
    #[error("non-uniform sample spacing: max jitter {max_jitter:e} s against dt = {dt} s")]
    NonUniformSpacing { max_jitter: f64, dt: f64 },

    /// The least-squares normal equations were singular.
    #[error("degenerate frequency grid: normal equations are singular")]
    DegenerateGrid,

    /// An error metric was requested against an identically-zero reference.
    #[error("degenerate reference: {0}")]
    DegenerateReference(String),

    /// Closed-form sinusoid solution does not exist at undamped resonance.
    #[error("undamped resonance: the analytic solution is unbounded at xi = 0, omega_0 = omega_n")]
    UndampedResonance,

    /// A method identifier was not recognized.
    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    /// Every period of a spectrum request failed.
    #[error("all {0} periods failed; first failure: {1}")]
    AllPeriodsFailed(usize, String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
