//! Closed-form solutions used as references for the numerical methods.

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::system::SdofSystem;

/// Harmonic ground acceleration `ag(t) = amplitude * sin(omega_0 * t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineExcitation {
    amplitude: f64,
    omega_0: f64,
}

impl SineExcitation {
    pub fn new(amplitude: f64, omega_0: f64) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::invalid("amplitude must be finite"));
        }
        if !omega_0.is_finite() || omega_0 <= 0.0 {
            return Err(Error::invalid(format!(
                "excitation frequency must be positive, got {omega_0}"
            )));
        }
        Ok(Self { amplitude, omega_0 })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }

    /// Sample the excitation itself.
    pub fn sample(&self, dt: f64, n: usize) -> Result<Signal> {
        Signal::from_fn(dt, n, |t| self.amplitude * (self.omega_0 * t).sin())
    }
}

/// Exact relative displacement under harmonic ground acceleration with zero
/// initial conditions:
///
/// ```text
/// u(t) = e^{-xi*wn*t} (C4 sin wd t + C3 cos wd t) + C1 sin w0 t + C2 cos w0 t
/// ```
///
/// The undamped resonant case (`xi = 0`, `omega_0 = omega_n`) has no bounded
/// closed form and is rejected.
pub fn sine_oracle(sys: &SdofSystem, exc: &SineExcitation, dt: f64, n: usize) -> Result<Signal> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    if n == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let w0 = exc.omega_0();
    if xi == 0.0 && w0 == wn {
        return Err(Error::UndampedResonance);
    }
    let wd = sys.omega_d();
    let r = w0 / wn;
    let denom = (1.0 - r * r).powi(2) + (2.0 * xi * r).powi(2);
    let scale = exc.amplitude() / (wn * wn);
    let c1 = -scale * (1.0 - r * r) / denom;
    let c2 = scale * (2.0 * xi * r) / denom;
    let c3 = -c2;
    let c4 = (xi * wn * c3 - c1 * w0) / wd;
    Signal::from_fn(dt, n, |t| {
        (-xi * wn * t).exp() * (c4 * (wd * t).sin() + c3 * (wd * t).cos())
            + c1 * (w0 * t).sin()
            + c2 * (w0 * t).cos()
    })
}

/// Displacement response to a unit ground-acceleration impulse:
/// `-(1/omega_d) * exp(-xi*omega_n*t) * sin(omega_d*t)` for `t >= 0`.
pub fn continuous_irf(sys: &SdofSystem, t: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let wd = sys.omega_d();
    -(1.0 / wd) * (-xi * wn * t).exp() * (wd * t).sin()
}
