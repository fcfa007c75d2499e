//! Discrete-time simulation of damped single-degree-of-freedom oscillators
//! under ground acceleration.
//!
//! The crate turns the continuous oscillator equation
//! `u'' + 2*xi*omega_n*u' + omega_n^2*u = -ag(t)` into discrete-time
//! recursions by every classical route — hold methods, impulse invariance,
//! Euler and Tustin substitutions, pole matching, frequency-response fits,
//! and the native structural-engineering steppers — simulates the response,
//! analyzes stability, and builds response spectra.
//!
//! Quick tour:
//!
//! * [`SdofSystem`], [`Signal`] — the oscillator and sampled data.
//! * [`tf`] / [`ss`] — biquad and state-space constructors per method.
//! * [`sim`] — the two generic simulation engines.
//! * [`steppers`] — piecewise-exact, central-difference, and Newmark
//!   integration in their native forms.
//! * [`stability`] — poles, eigenvalues, closed-form verdicts.
//! * [`signals`] — ground-motion parsing, resampling, analytic references,
//!   error metrics.
//! * [`spectrum`] — parallel period sweeps.
//! * [`method`] — the string-keyed method registry used by the CLI.

mod biquad;
mod error;
mod linalg;
mod signal;
mod state_space;
mod system;

pub mod method;
pub mod signals;
pub mod sim;
pub mod spectrum;
pub mod ss;
pub mod stability;
pub mod steppers;
pub mod tf;

pub use biquad::Biquad;
pub use error::{Error, Result};
pub use method::MethodId;
pub use signal::Signal;
pub use state_space::DiscreteStateSpace;
pub use system::SdofSystem;
