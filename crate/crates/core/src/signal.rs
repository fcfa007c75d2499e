//! Uniformly sampled real-valued sequences.

use crate::error::{Error, Result};

/// A uniformly sampled signal: ground acceleration on the way in, response
/// quantities on the way out. `dt` is the sample interval in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    dt: f64,
    samples: Vec<f64>,
}

impl Signal {
    /// Wrap a sample vector. Requires `dt > 0`, at least one sample, and all
    /// samples finite.
    pub fn new(dt: f64, samples: Vec<f64>) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format!("dt must be positive, got {dt}")));
        }
        if samples.is_empty() {
            return Err(Error::invalid("signal must contain at least one sample"));
        }
        if let Some(k) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample at index {k}")));
        }
        Ok(Self { dt, samples })
    }

    /// Sample `f(k*dt)` for `k = 0..n`.
    pub fn from_fn(dt: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..n).map(|k| f(k as f64 * dt)).collect();
        Self::new(dt, samples)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time of sample `k` in seconds.
    pub fn time_at(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn duration(&self) -> f64 {
        (self.samples.len().saturating_sub(1)) as f64 * self.dt
    }

    /// Largest absolute sample value.
    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_construction() {
        assert!(Signal::new(0.0, vec![1.0]).is_err());
        assert!(Signal::new(0.01, vec![]).is_err());
        assert!(Signal::new(0.01, vec![1.0, f64::NAN]).is_err());
        assert!(Signal::new(0.01, vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn peak_and_duration() {
        let s = Signal::new(0.5, vec![1.0, -3.0, 2.0]).unwrap();
        assert_eq!(s.peak(), 3.0);
        assert_eq!(s.duration(), 1.0);
        assert_eq!(s.time_at(2), 1.0);
    }
}
