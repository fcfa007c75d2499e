//! Shared helpers for the benchmark targets.

use sdof::{SdofSystem, Signal};

pub fn reference_system() -> SdofSystem {
    SdofSystem::from_period(0.3, 0.05).expect("valid parameters")
}

/// Deterministic wideband record.
pub fn wideband_motion(dt: f64, n: usize) -> Signal {
    Signal::from_fn(dt, n, |t| {
        (3.1 * t).sin() * (0.7 + (11.0 * t).cos()) + 0.2 * (29.0 * t).sin()
    })
    .expect("finite samples")
}
