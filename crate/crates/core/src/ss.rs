//! State-space discretizations of the oscillator.
//!
//! The continuous model is
//!
//! ```text
//! x' = A x + B ag,   A = [[0, 1], [-omega_n^2, -2*xi*omega_n]],  B = [0, -1]
//! y  = C x + D ag
//! ```
//!
//! with state `x = [u, u']`. `C = [1, 0]` observes displacement only;
//! `C = I` adds velocity as a second output.
//!
//! `exp(A*dt)` is evaluated by its closed form (the matrix has the
//! complex-conjugate eigenvalue pair `-xi*omega_n -/+ i*omega_d`, so the
//! exponential collapses to a cosine/sine combination of `A`), and `A^-1` by
//! the 2x2 cofactor inverse with `det A = omega_n^2`.

use crate::error::{Error, Result};
use crate::linalg::{
    det2, mat2_add, mat2_inv, mat2_mul, mat2_scale, mat2_sub, mat2_vec, Mat2, IDENTITY2,
};
use crate::state_space::DiscreteStateSpace;
use crate::system::SdofSystem;

/// The continuous-time state-space model of an oscillator.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousStateSpace {
    pub a: Mat2,
    pub b: [f64; 2],
    pub c: Vec<[f64; 2]>,
    pub d: Vec<f64>,
}

impl ContinuousStateSpace {
    pub fn new(sys: &SdofSystem, observe_velocity: bool) -> Self {
        let wn = sys.omega_n();
        let a = [[0.0, 1.0], [-wn * wn, -2.0 * sys.xi() * wn]];
        let b = [0.0, -1.0];
        let (c, d) = if observe_velocity {
            (vec![[1.0, 0.0], [0.0, 1.0]], vec![0.0, 0.0])
        } else {
            (vec![[1.0, 0.0]], vec![0.0])
        };
        Self { a, b, c, d }
    }

    fn a_inv(&self) -> Mat2 {
        // det A = omega_n^2 > 0 by construction.
        mat2_inv(&self.a).expect("oscillator state matrix is invertible")
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    Ok(())
}

/// Closed-form `exp(A*dt)` for the oscillator state matrix:
///
/// ```text
/// exp(A*dt) = e^{-xi*wn*dt} [ cos(wd*dt) I + sin(wd*dt)/wd (A + xi*wn I) ]
/// ```
pub fn expm_2x2(sys: &SdofSystem, dt: f64) -> Result<Mat2> {
    if !dt.is_finite() || dt < 0.0 {
        return Err(Error::invalid(format!("dt must be nonnegative, got {dt}")));
    }
    let wn = sys.omega_n();
    let xi = sys.xi();
    let wd = sys.omega_d();
    let alpha = (-xi * wn * dt).exp();
    let theta = wd * dt;
    let (c, s) = (theta.cos(), theta.sin());
    let damp = xi / (1.0 - xi * xi).sqrt();
    Ok([
        [alpha * (c + damp * s), alpha * s / wd],
        [-alpha * wn / (1.0 - xi * xi).sqrt() * s, alpha * (c - damp * s)],
    ])
}

fn assemble(
    a_d: Mat2,
    b_d: [f64; 2],
    c: &[[f64; 2]],
    d: &[f64],
    dt: f64,
) -> Result<DiscreteStateSpace> {
    DiscreteStateSpace::new(
        a_d.iter().map(|r| r.to_vec()).collect(),
        b_d.to_vec(),
        c.iter().map(|r| r.to_vec()).collect(),
        d.to_vec(),
        dt,
    )
}

/// Zero-order hold: `A_D = exp(A*dt)`, `B_D = A^-1 (A_D - I) B`. Exact when
/// the input really is stair-like.
pub fn zoh_dss(sys: &SdofSystem, dt: f64, observe_velocity: bool) -> Result<DiscreteStateSpace> {
    check_dt(dt)?;
    let cont = ContinuousStateSpace::new(sys, observe_velocity);
    let a_d = expm_2x2(sys, dt)?;
    let b_d = mat2_vec(
        &mat2_mul(&cont.a_inv(), &mat2_sub(&a_d, &IDENTITY2)),
        &cont.b,
    );
    assemble(a_d, b_d, &cont.c, &cont.d, dt)
}

/// First-order hold: exact for piecewise-linear input. Same `A_D` as ZOH;
/// the input matrix integrates the linear ramp and a feedthrough appears.
pub fn foh_dss(sys: &SdofSystem, dt: f64, observe_velocity: bool) -> Result<DiscreteStateSpace> {
    check_dt(dt)?;
    let cont = ContinuousStateSpace::new(sys, observe_velocity);
    let a_d = expm_2x2(sys, dt)?;
    let a_inv = cont.a_inv();
    let a_inv2 = mat2_mul(&a_inv, &a_inv);
    let ad_m_i = mat2_sub(&a_d, &IDENTITY2);
    // B_D = (1/dt) A^-2 (A_D - I)^2 B
    let b_d = mat2_vec(
        &mat2_scale(&mat2_mul(&a_inv2, &mat2_mul(&ad_m_i, &ad_m_i)), 1.0 / dt),
        &cont.b,
    );
    // D_D = D + C [ (1/dt) A^-2 (A_D - I) - A^-1 ] B
    let inner = mat2_sub(&mat2_scale(&mat2_mul(&a_inv2, &ad_m_i), 1.0 / dt), &a_inv);
    let inner_b = mat2_vec(&inner, &cont.b);
    let d_d: Vec<f64> = cont
        .c
        .iter()
        .zip(&cont.d)
        .map(|(crow, d)| d + crow[0] * inner_b[0] + crow[1] * inner_b[1])
        .collect();
    assemble(a_d, b_d, &cont.c, &d_d, dt)
}

/// Forward Euler: `A_D = I + A*dt`, `B_D = B*dt`.
pub fn fe_dss(sys: &SdofSystem, dt: f64, observe_velocity: bool) -> Result<DiscreteStateSpace> {
    check_dt(dt)?;
    let cont = ContinuousStateSpace::new(sys, observe_velocity);
    let a_d = mat2_add(&IDENTITY2, &mat2_scale(&cont.a, dt));
    let b_d = [cont.b[0] * dt, cont.b[1] * dt];
    assemble(a_d, b_d, &cont.c, &cont.d, dt)
}

fn resolvent(a: &Mat2, dt_factor: f64) -> Result<Mat2> {
    let m = mat2_sub(&IDENTITY2, &mat2_scale(a, dt_factor));
    if det2(&m).abs() < f64::EPSILON {
        return Err(Error::invalid(
            "degenerate parameters: (I - A*dt) is singular",
        ));
    }
    Ok(mat2_inv(&m).expect("checked determinant above"))
}

/// Backward Euler: `A_D = (I - A*dt)^-1`; the observation matrices pick up
/// the same resolvent.
pub fn be_dss(sys: &SdofSystem, dt: f64, observe_velocity: bool) -> Result<DiscreteStateSpace> {
    check_dt(dt)?;
    let cont = ContinuousStateSpace::new(sys, observe_velocity);
    let inv = resolvent(&cont.a, dt)?;
    let a_d = inv;
    let b_d = mat2_vec(&mat2_scale(&inv, dt), &cont.b);
    let c_d: Vec<[f64; 2]> = cont
        .c
        .iter()
        .map(|crow| {
            [
                crow[0] * inv[0][0] + crow[1] * inv[1][0],
                crow[0] * inv[0][1] + crow[1] * inv[1][1],
            ]
        })
        .collect();
    let d_d: Vec<f64> = c_d
        .iter()
        .zip(&cont.d)
        .map(|(crow, d)| d + (crow[0] * cont.b[0] + crow[1] * cont.b[1]) * dt)
        .collect();
    assemble(a_d, b_d, &c_d, &d_d, dt)
}

/// Tustin: `A_D = (I + A*dt/2)(I - A*dt/2)^-1` with half-sample feedthrough.
pub fn tustin_dss(sys: &SdofSystem, dt: f64, observe_velocity: bool) -> Result<DiscreteStateSpace> {
    check_dt(dt)?;
    let cont = ContinuousStateSpace::new(sys, observe_velocity);
    let inv = resolvent(&cont.a, dt / 2.0)?;
    let plus = mat2_add(&IDENTITY2, &mat2_scale(&cont.a, dt / 2.0));
    let a_d = mat2_mul(&plus, &inv);
    let b_d = mat2_vec(&mat2_scale(&inv, dt), &cont.b);
    let c_d: Vec<[f64; 2]> = cont
        .c
        .iter()
        .map(|crow| {
            [
                crow[0] * inv[0][0] + crow[1] * inv[1][0],
                crow[0] * inv[0][1] + crow[1] * inv[1][1],
            ]
        })
        .collect();
    let d_d: Vec<f64> = c_d
        .iter()
        .zip(&cont.d)
        .map(|(crow, d)| d + (crow[0] * cont.b[0] + crow[1] * cont.b[1]) * dt / 2.0)
        .collect();
    assemble(a_d, b_d, &c_d, &d_d, dt)
}
