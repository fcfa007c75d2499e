//! Discrete-time state-space systems.

use crate::error::{Error, Result};

/// A discrete-time state-space model
///
/// ```text
/// x[k+1] = A_D x[k] + B_D ag[k]
/// y[k]   = C_D x[k] + D_D ag[k]
/// ```
///
/// with a single scalar input (ground acceleration) and `m` scalar outputs.
/// The classical discretizations use `n = 2` states; the three-state form used
/// for the acceleration-augmented integrator uses `n = 3`. The first output
/// row is always relative displacement.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteStateSpace {
    a_d: Vec<Vec<f64>>,
    b_d: Vec<f64>,
    c_d: Vec<Vec<f64>>,
    d_d: Vec<f64>,
    dt: f64,
}

impl DiscreteStateSpace {
    pub fn new(
        a_d: Vec<Vec<f64>>,
        b_d: Vec<f64>,
        c_d: Vec<Vec<f64>>,
        d_d: Vec<f64>,
        dt: f64,
    ) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format!("dt must be positive, got {dt}")));
        }
        let n = a_d.len();
        if n == 0 || a_d.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("state matrix must be square and non-empty"));
        }
        if b_d.len() != n {
            return Err(Error::invalid("input matrix must have one row per state"));
        }
        let m = c_d.len();
        if m == 0 || c_d.iter().any(|row| row.len() != n) {
            return Err(Error::invalid(
                "output matrix must have n columns and at least one row",
            ));
        }
        if d_d.len() != m {
            return Err(Error::invalid("feedthrough must have one entry per output"));
        }
        let finite = a_d.iter().flatten().all(|v| v.is_finite())
            && b_d.iter().all(|v| v.is_finite())
            && c_d.iter().flatten().all(|v| v.is_finite())
            && d_d.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("state-space matrices must be finite"));
        }
        Ok(Self { a_d, b_d, c_d, d_d, dt })
    }

    pub fn state_dim(&self) -> usize {
        self.a_d.len()
    }

    pub fn output_dim(&self) -> usize {
        self.c_d.len()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn a_d(&self) -> &[Vec<f64>] {
        &self.a_d
    }

    pub fn b_d(&self) -> &[f64] {
        &self.b_d
    }

    pub fn c_d(&self) -> &[Vec<f64>] {
        &self.c_d
    }

    pub fn d_d(&self) -> &[f64] {
        &self.d_d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_dimensions() {
        let ok = DiscreteStateSpace::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.0, 1.0],
            vec![vec![1.0, 0.0]],
            vec![0.0],
            0.01,
        );
        assert!(ok.is_ok());

        let ragged = DiscreteStateSpace::new(
            vec![vec![1.0], vec![0.0, 1.0]],
            vec![0.0, 1.0],
            vec![vec![1.0, 0.0]],
            vec![0.0],
            0.01,
        );
        assert!(ragged.is_err());

        let bad_dt = DiscreteStateSpace::new(
            vec![vec![1.0]],
            vec![0.0],
            vec![vec![1.0]],
            vec![0.0],
            0.0,
        );
        assert!(bad_dt.is_err());
    }
}
