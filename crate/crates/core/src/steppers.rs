//! Classical earthquake-engineering time-stepping algorithms in their native
//! formulations.
//!
//! All steppers start from rest: `u[0] = 0`, `u'[0] = 0`, with the initial
//! acceleration taken from equilibrium where the scheme needs it.

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::signal::Signal;
use crate::state_space::DiscreteStateSpace;
use crate::system::SdofSystem;

/// Newmark integration weights.
///
/// `gamma` weighs the acceleration average in the velocity update, `beta` in
/// the displacement update. `beta = 1/4` (average acceleration) is
/// unconditionally stable; `beta = 1/6` (linear acceleration) is stable for
/// `dt/T_n` up to about 0.551 at zero damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewmarkParams {
    gamma: f64,
    beta: f64,
}

impl NewmarkParams {
    pub fn new(gamma: f64, beta: f64) -> Result<Self> {
        if !gamma.is_finite() || !(0.0..=1.0).contains(&gamma) {
            return Err(Error::invalid(format!("gamma must lie in [0, 1], got {gamma}")));
        }
        if !beta.is_finite() || !(0.0..=0.5).contains(&beta) {
            return Err(Error::invalid(format!("beta must lie in [0, 1/2], got {beta}")));
        }
        Ok(Self { gamma, beta })
    }

    /// Constant average acceleration: `gamma = 1/2`, `beta = 1/4`.
    pub fn average_acceleration() -> Self {
        Self { gamma: 0.5, beta: 0.25 }
    }

    /// Linear acceleration: `gamma = 1/2`, `beta = 1/6`.
    pub fn linear_acceleration() -> Self {
        Self { gamma: 0.5, beta: 1.0 / 6.0 }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Relative response histories produced by a stepper. Acceleration is
/// populated by the schemes that carry it as a state (central difference and
/// Newmark).
#[derive(Debug, Clone)]
pub struct StepperResult {
    pub displacement: Signal,
    pub velocity: Signal,
    pub acceleration: Option<Signal>,
}

/// One-step update coefficients of the piecewise-exact integrator: the state
/// transition `a_hat` (which equals `exp(A*dt)`) and the input matrix `b_hat`
/// acting on the bracketing acceleration samples.
#[derive(Debug, Clone, PartialEq)]
pub struct NigamJenningsCoeffs {
    pub a_hat: Mat2,
    pub b_hat: Mat2,
    pub dt: f64,
}

impl NigamJenningsCoeffs {
    pub fn new(sys: &SdofSystem, dt: f64) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid(format!("dt must be positive, got {dt}")));
        }
        let (wn, xi) = (sys.omega_n(), sys.xi());
        let wd = sys.omega_d();
        let alpha = (-xi * wn * dt).exp();
        let theta = wd * dt;
        let (c, s) = (theta.cos(), theta.sin());
        let damp = xi / (1.0 - xi * xi).sqrt();
        let wn2 = wn * wn;
        let wn3 = wn2 * wn;

        let a_hat = [
            [alpha * (damp * s + c), alpha / wd * s],
            [-wn / (1.0 - xi * xi).sqrt() * alpha * s, alpha * (c - damp * s)],
        ];

        let f1 = (2.0 * xi * xi - 1.0) / (wn2 * dt) + xi / wn;
        let f2 = 2.0 * xi / (wn3 * dt) + 1.0 / wn2;
        let f3 = (2.0 * xi * xi - 1.0) / (wn2 * dt);
        let f4 = 2.0 * xi / (wn3 * dt);
        let b11 = alpha * (f1 * s / wd + f2 * c) - 2.0 * xi / (wn3 * dt);
        let b12 = -alpha * (f3 * s / wd + f4 * c) - 1.0 / wn2 + 2.0 * xi / (wn3 * dt);
        let b21 = alpha * (f1 * (c - damp * s) - f2 * (wd * s + xi * wn * c)) + 1.0 / (wn2 * dt);
        let b22 = -alpha * (f3 * (c - damp * s) - f4 * (wd * s + xi * wn * c)) - 1.0 / (wn2 * dt);
        let b_hat = [[b11, b12], [b21, b22]];

        Ok(Self { a_hat, b_hat, dt })
    }
}

fn check_input(input: &Signal) -> Result<()> {
    if input.len() < 2 {
        return Err(Error::invalid("stepper input must have at least 2 samples"));
    }
    Ok(())
}

/// Piecewise-exact integration: exact for ground acceleration that varies
/// linearly between samples. Unconditionally stable.
pub fn nigam_jennings(sys: &SdofSystem, input: &Signal) -> Result<StepperResult> {
    check_input(input)?;
    let coeffs = NigamJenningsCoeffs::new(sys, input.dt())?;
    let a = &coeffs.a_hat;
    let b = &coeffs.b_hat;
    let ag = input.samples();
    let n = ag.len();
    let mut disp = vec![0.0; n];
    let mut vel = vec![0.0; n];
    let (mut u, mut v) = (0.0, 0.0);
    for k in 0..n - 1 {
        let un = a[0][0] * u + a[0][1] * v + b[0][0] * ag[k] + b[0][1] * ag[k + 1];
        let vn = a[1][0] * u + a[1][1] * v + b[1][0] * ag[k] + b[1][1] * ag[k + 1];
        if !un.is_finite() || !vn.is_finite() {
            return Err(Error::Diverged { index: k + 1, time: input.time_at(k + 1) });
        }
        u = un;
        v = vn;
        disp[k + 1] = u;
        vel[k + 1] = v;
    }
    Ok(StepperResult {
        displacement: Signal::new(input.dt(), disp)?,
        velocity: Signal::new(input.dt(), vel)?,
        acceleration: None,
    })
}

/// Central difference stepping. The start-up uses a fictitious sample
/// `u(-dt) = u0 - dt*v0 + dt^2/2 * a0` with `a0` from equilibrium; velocity
/// and acceleration are the usual centered differences (left at zero for the
/// final sample, where the forward neighbour does not exist).
pub fn central_difference(sys: &SdofSystem, input: &Signal) -> Result<StepperResult> {
    check_input(input)?;
    let dt = input.dt();
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let ag = input.samples();
    let n = ag.len();

    let k_hat = 1.0 / (dt * dt) + xi * wn / dt;
    let a_coef = 1.0 / (dt * dt) - xi * wn / dt;
    let b_coef = wn * wn - 2.0 / (dt * dt);

    let mut disp = vec![0.0; n];
    let mut vel = vec![0.0; n];
    let mut acc = vec![0.0; n];
    let a0 = -ag[0];
    let mut u_prev = dt * dt / 2.0 * a0; // u(-dt) with zero u0, v0
    for k in 0..n - 1 {
        let p_hat = -ag[k] - a_coef * u_prev - b_coef * disp[k];
        let u_next = p_hat / k_hat;
        if !u_next.is_finite() {
            return Err(Error::Diverged { index: k + 1, time: input.time_at(k + 1) });
        }
        vel[k] = (u_next - u_prev) / (2.0 * dt);
        acc[k] = (u_next - 2.0 * disp[k] + u_prev) / (dt * dt);
        u_prev = disp[k];
        disp[k + 1] = u_next;
    }
    Ok(StepperResult {
        displacement: Signal::new(dt, disp)?,
        velocity: Signal::new(dt, vel)?,
        acceleration: Some(Signal::new(dt, acc)?),
    })
}

/// Newmark stepping: per-step increments solved by a scalar division (the
/// system is linear, so no iteration is required), then displacement,
/// velocity, and acceleration updated cumulatively.
pub fn newmark(sys: &SdofSystem, input: &Signal, params: NewmarkParams) -> Result<StepperResult> {
    check_input(input)?;
    let dt = input.dt();
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let (gamma, beta) = (params.gamma, params.beta);
    if beta == 0.0 {
        return Err(Error::invalid("beta = 0 makes the increment solve singular"));
    }
    let k_hat = wn * wn + gamma / (beta * dt) * (2.0 * xi * wn) + 1.0 / (beta * dt * dt);
    if k_hat.is_nan() || k_hat <= 0.0 {
        return Err(Error::invalid(format!("effective stiffness must be positive, got {k_hat}")));
    }
    let a_coef = 1.0 / (beta * dt) + gamma / beta * (2.0 * xi * wn);
    let b_coef = 1.0 / (2.0 * beta) + dt * (gamma / (2.0 * beta) - 1.0) * (2.0 * xi * wn);

    let ag = input.samples();
    let n = ag.len();
    let mut disp = vec![0.0; n];
    let mut vel = vec![0.0; n];
    let mut acc = vec![0.0; n];
    acc[0] = -ag[0]; // equilibrium at rest
    for k in 0..n - 1 {
        let dp_hat = -ag[k + 1] + ag[k] + a_coef * vel[k] + b_coef * acc[k];
        let du = dp_hat / k_hat;
        let dv = gamma / (beta * dt) * du - gamma / beta * vel[k]
            + dt * (1.0 - gamma / (2.0 * beta)) * acc[k];
        let da = du / (beta * dt * dt) - vel[k] / (beta * dt) - acc[k] / (2.0 * beta);
        disp[k + 1] = disp[k] + du;
        vel[k + 1] = vel[k] + dv;
        acc[k + 1] = acc[k] + da;
        if !disp[k + 1].is_finite() || !vel[k + 1].is_finite() || !acc[k + 1].is_finite() {
            return Err(Error::Diverged { index: k + 1, time: input.time_at(k + 1) });
        }
    }
    Ok(StepperResult {
        displacement: Signal::new(dt, disp)?,
        velocity: Signal::new(dt, vel)?,
        acceleration: Some(Signal::new(dt, acc)?),
    })
}

/// The Newmark update written as a three-state discrete system over
/// `x = [u, u', u'']`. The recursion consumes the input with a one-sample
/// forward shift, so simulate it through
/// [`newmark_input_shift`](crate::sim::newmark_input_shift).
pub fn newmark_dss(sys: &SdofSystem, dt: f64, params: NewmarkParams) -> Result<DiscreteStateSpace> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let (g, b) = (params.gamma, params.beta);
    let wn2 = wn * wn;
    let xw = 2.0 * xi * wn;
    let dt2 = dt * dt;
    let dt3 = dt2 * dt;
    let delta = 1.0 + xw * g * dt + wn2 * b * dt2;

    let a = [
        [
            1.0 + xw * g * dt,
            -xw * b * dt2 + xw * g * dt2 + dt,
            -xw * b * dt3 + xi * wn * g * dt3 - b * dt2 + 0.5 * dt2,
        ],
        [
            -wn2 * g * dt,
            1.0 + wn2 * b * dt2 - wn2 * g * dt2,
            wn2 * b * dt3 - 0.5 * wn2 * g * dt3 - g * dt + dt,
        ],
        [
            -wn2,
            -xw - wn2 * dt,
            wn2 * b * dt2 - 0.5 * wn2 * dt2 + xw * g * dt - xw * dt,
        ],
    ];
    let a_d: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().map(|v| v / delta).collect())
        .collect();
    let b_d = vec![-b * dt2 / delta, -g * dt / delta, -1.0 / delta];
    DiscreteStateSpace::new(a_d, b_d, vec![vec![1.0, 0.0, 0.0]], vec![0.0], dt)
}
