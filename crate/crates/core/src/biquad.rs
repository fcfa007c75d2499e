//! Second-order discrete transfer functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::quadratic_roots;

/// A second-order discrete-time transfer function with `a0` normalized to 1:
///
/// ```text
///            b0 + b1*z^-1 + b2*z^-2
/// H(z) = --------------------------------
///             1 + a1*z^-1 + a2*z^-2
/// ```
///
/// realized in the time domain by the two-delay recursion
/// `u[k] = -a1*u[k-1] - a2*u[k-2] + b0*ag[k] + b1*ag[k-1] + b2*ag[k-2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    pub fn new(b0: f64, b1: f64, b2: f64, a1: f64, a2: f64) -> Result<Self> {
        for (name, v) in [("b0", b0), ("b1", b1), ("b2", b2), ("a1", a1), ("a2", a2)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("coefficient {name} is not finite")));
            }
        }
        Ok(Self { b0, b1, b2, a1, a2 })
    }

    /// Poles: the two roots of `z^2 + a1*z + a2`.
    pub fn poles(&self) -> [Complex64; 2] {
        quadratic_roots(self.a1, self.a2)
    }

    /// Evaluate the transfer function at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zi = 1.0 / z;
        let num = self.b0 + zi * (self.b1 + zi * self.b2);
        let den = 1.0 + zi * (self.a1 + zi * self.a2);
        num / den
    }

    /// Frequency response at angular frequency `omega` (rad/s) for sample
    /// interval `dt`, i.e. the value at `z = exp(i*omega*dt)`.
    pub fn frf(&self, omega: f64, dt: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, omega * dt))
    }

    /// Static gain `H(z = 1)`.
    pub fn dc_gain(&self) -> f64 {
        (self.b0 + self.b1 + self.b2) / (1.0 + self.a1 + self.a2)
    }

    /// True when both poles are strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.poles().iter().all(|p| p.norm() < 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn poles_of_marginal_oscillator() {
        // z^2 + 1: poles at +/- i, magnitude exactly 1
        let tf = Biquad::new(1.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let p = tf.poles();
        assert_eq!(p[0].re, 0.0);
        assert_relative_eq!(p[0].norm(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(p[1].norm(), 1.0, epsilon = 1e-15);
        assert!(!tf.is_stable());
    }

    #[test]
    fn poles_of_factorable_denominator() {
        // z^2 - 3z + 2 = (z-1)(z-2): unstable
        let tf = Biquad::new(1.0, 0.0, 0.0, -3.0, 2.0).unwrap();
        let mut mags: Vec<f64> = tf.poles().iter().map(|p| p.norm()).collect();
        mags.sort_by(f64::total_cmp);
        assert_relative_eq!(mags[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(mags[1], 2.0, epsilon = 1e-14);
        assert!(!tf.is_stable());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Biquad::new(f64::INFINITY, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(Biquad::new(0.0, 0.0, 0.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn dc_gain_matches_eval_at_one() {
        let tf = Biquad::new(0.5, -0.2, 0.1, -1.2, 0.5).unwrap();
        let z1 = tf.eval(Complex64::new(1.0, 0.0));
        assert_relative_eq!(tf.dc_gain(), z1.re, max_relative = 1e-14);
        assert_relative_eq!(z1.im, 0.0, epsilon = 1e-15);
    }
}
