//! Generic discrete-time simulation engines.
//!
//! Both engines assume zero initial conditions: the biquad recursion reads
//! samples at negative indices as zero, and the state-space recursion starts
//! from a zero state vector. Any non-finite value aborts with the index of the
//! first bad sample; an unstable discretization is a legitimate outcome and is
//! reported rather than clamped.

use crate::biquad::Biquad;
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::state_space::DiscreteStateSpace;

/// Run the two-delay recursion of a [`Biquad`] over `input`, producing the
/// response at the same rate and length.
pub fn biquad_filter(tf: &Biquad, input: &Signal) -> Result<Signal> {
    let x = input.samples();
    let n = x.len();
    let mut out = vec![0.0; n];
    let (mut y1, mut y2) = (0.0, 0.0);
    let (mut x1, mut x2) = (0.0, 0.0);
    for k in 0..n {
        let y = -tf.a1 * y1 - tf.a2 * y2 + tf.b0 * x[k] + tf.b1 * x1 + tf.b2 * x2;
        if !y.is_finite() {
            return Err(Error::Diverged { index: k, time: input.time_at(k) });
        }
        out[k] = y;
        y2 = y1;
        y1 = y;
        x2 = x1;
        x1 = x[k];
    }
    Signal::new(input.dt(), out)
}

/// Simulate a [`DiscreteStateSpace`] system and return every output row.
///
/// The state starts at zero, so `y[0] = D_D * ag[0]`, and for `k >= 1`
/// `x[k] = A_D x[k-1] + B_D ag[k-1]` followed by `y[k] = C_D x[k] + D_D ag[k]`.
pub fn ss_simulate_outputs(sys: &DiscreteStateSpace, input: &Signal) -> Result<Vec<Vec<f64>>> {
    if (sys.dt() - input.dt()).abs() > 1e-12 * sys.dt() {
        return Err(Error::DtMismatch { system_dt: sys.dt(), input_dt: input.dt() });
    }
    let ag = input.samples();
    let n_samples = ag.len();
    let n = sys.state_dim();
    let m = sys.output_dim();
    let a = sys.a_d();
    let b = sys.b_d();
    let c = sys.c_d();
    let d = sys.d_d();

    let mut outputs = vec![vec![0.0; n_samples]; m];
    let mut x = vec![0.0; n];
    let mut x_next = vec![0.0; n];
    for k in 0..n_samples {
        if k > 0 {
            for i in 0..n {
                let mut acc = b[i] * ag[k - 1];
                for j in 0..n {
                    acc += a[i][j] * x[j];
                }
                x_next[i] = acc;
            }
            std::mem::swap(&mut x, &mut x_next);
        }
        for (row, out) in outputs.iter_mut().enumerate() {
            let mut y = d[row] * ag[k];
            for j in 0..n {
                y += c[row][j] * x[j];
            }
            if !y.is_finite() {
                return Err(Error::Diverged { index: k, time: input.time_at(k) });
            }
            out[k] = y;
        }
    }
    Ok(outputs)
}

/// Simulate a [`DiscreteStateSpace`] system and return the displacement
/// output (the first output row).
pub fn ss_simulate(sys: &DiscreteStateSpace, input: &Signal) -> Result<Signal> {
    let mut outputs = ss_simulate_outputs(sys, input)?;
    Signal::new(input.dt(), outputs.swap_remove(0))
}

/// Simulate a three-state system whose recursion consumes the *next* input
/// sample, `x[k+1] = A_D x[k] + B_D ag[k+1]`.
///
/// Equivalent to [`ss_simulate`] on the input advanced by one sample with the
/// final sample held.
pub fn newmark_input_shift(sys: &DiscreteStateSpace, input: &Signal) -> Result<Signal> {
    if sys.state_dim() != 3 {
        return Err(Error::invalid(format!(
            "input-shifted recursion requires a 3-state system, got {} states",
            sys.state_dim()
        )));
    }
    let src = input.samples();
    let mut shifted: Vec<f64> = src[1..].to_vec();
    shifted.push(*src.last().expect("signals are non-empty"));
    let advanced = Signal::new(input.dt(), shifted)?;
    ss_simulate(sys, &advanced)
}
