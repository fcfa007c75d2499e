//! The continuous-time oscillator under study.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A linear elastic single-degree-of-freedom oscillator, characterized by its
/// natural frequency `omega_n` (rad/s) and damping ratio `xi`.
///
/// Governing equation for relative displacement `u` under ground acceleration
/// `ag`:
///
/// ```text
/// u'' + 2*xi*omega_n*u' + omega_n^2 * u = -ag
/// ```
///
/// Only the underdamped range `0 <= xi < 1` is representable, so the damped
/// frequency `omega_d = omega_n*sqrt(1 - xi^2)` is always real and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdofSystem {
    omega_n: f64,
    xi: f64,
}

impl SdofSystem {
    pub fn new(omega_n: f64, xi: f64) -> Result<Self> {
        if !omega_n.is_finite() || omega_n <= 0.0 {
            return Err(Error::invalid(format!(
                "natural frequency must be positive and finite, got {omega_n}"
            )));
        }
        if !xi.is_finite() || !(0.0..1.0).contains(&xi) {
            return Err(Error::invalid(format!(
                "damping ratio must satisfy 0 <= xi < 1, got {xi}"
            )));
        }
        Ok(Self { omega_n, xi })
    }

    /// Build from the natural period `tn` in seconds (`omega_n = 2*pi/tn`).
    pub fn from_period(tn: f64, xi: f64) -> Result<Self> {
        if !tn.is_finite() || tn <= 0.0 {
            return Err(Error::invalid(format!(
                "natural period must be positive and finite, got {tn}"
            )));
        }
        Self::new(std::f64::consts::TAU / tn, xi)
    }

    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Damped natural frequency `omega_n*sqrt(1 - xi^2)`.
    pub fn omega_d(&self) -> f64 {
        self.omega_n * (1.0 - self.xi * self.xi).sqrt()
    }

    /// Natural period in seconds.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega_n
    }

    /// Continuous frequency response `H(i*omega)` from ground acceleration to
    /// relative displacement.
    pub fn frf(&self, omega: f64) -> Complex64 {
        let s = Complex64::new(0.0, omega);
        -1.0 / (s * s + 2.0 * self.xi * self.omega_n * s + self.omega_n * self.omega_n)
    }

    /// Static gain `H(0) = -1/omega_n^2`: displacement per unit of constant
    /// ground acceleration.
    pub fn dc_gain(&self) -> f64 {
        -1.0 / (self.omega_n * self.omega_n)
    }
}
