//! Pole locations, eigenvalues, and closed-form stability verdicts.
//!
//! Verdicts use the strict bounded-input/bounded-output taxonomy: a system is
//! `Stable` only when every pole magnitude is strictly below 1, `Marginal`
//! when the largest magnitude sits on the unit circle (within 1e-12), and
//! `Unstable` otherwise. Zero damping therefore reports `Marginal` for the
//! hold-family methods, whose poles then lie exactly on the circle.

use std::fmt;

use num_complex::Complex64;

use crate::biquad::Biquad;
use crate::error::{Error, Result};
use crate::linalg::quadratic_roots;
use crate::method::{MethodId, KANAMORI_DEFAULT_BAND};
use crate::state_space::DiscreteStateSpace;
use crate::steppers::NewmarkParams;
use crate::system::SdofSystem;
use crate::tf;

/// Width of the band around |p| = 1 reported as marginal.
pub const MARGINAL_BAND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Marginal,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Stable => write!(f, "stable"),
            Verdict::Marginal => write!(f, "marginal"),
            Verdict::Unstable => write!(f, "unstable"),
        }
    }
}

/// Stability summary for one method at one `(system, dt)` point.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub method: MethodId,
    /// Discrete poles (or eigenvalues of the update matrix), up to three.
    pub poles: Vec<Complex64>,
    /// Their magnitudes, in the same order.
    pub magnitudes: Vec<f64>,
    pub verdict: Verdict,
    /// Human-readable closed-form stability condition.
    pub condition: String,
    /// Distance of the largest magnitude from the unit circle (positive
    /// inside, negative outside).
    pub margin: f64,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

/// Classify a pole-magnitude set with the strict-inequality convention.
pub fn classify(magnitudes: &[f64]) -> Verdict {
    let max = magnitudes.iter().fold(0.0f64, |m, v| m.max(*v));
    if max > 1.0 + MARGINAL_BAND {
        Verdict::Unstable
    } else if max >= 1.0 - MARGINAL_BAND {
        Verdict::Marginal
    } else {
        Verdict::Stable
    }
}

/// The two roots of `z^2 + a1*z + a2`.
pub fn biquad_poles(tf: &Biquad) -> [Complex64; 2] {
    tf.poles()
}

/// Eigenvalues of the update matrix of a two- or three-state system.
///
/// The three-state case assumes the acceleration-augmented form, whose update
/// matrix is structurally rank-deficient: one eigenvalue is exactly zero and
/// the remaining pair comes from the quadratic factor built from the trace
/// and the sum of principal 2x2 minors.
pub fn dss_eigenvalues(sys: &DiscreteStateSpace) -> Result<Vec<Complex64>> {
    let a = sys.a_d();
    match sys.state_dim() {
        2 => {
            let tr = a[0][0] + a[1][1];
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            Ok(quadratic_roots(-tr, det).to_vec())
        }
        3 => {
            let tr = a[0][0] + a[1][1] + a[2][2];
            let minor_sum = (a[0][0] * a[1][1] - a[0][1] * a[1][0])
                + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
                + (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
            let mut eigs = quadratic_roots(-tr, minor_sum).to_vec();
            eigs.push(Complex64::new(0.0, 0.0));
            Ok(eigs)
        }
        n => Err(Error::invalid(format!(
            "eigenvalue extraction supports 2 or 3 states, got {n}"
        ))),
    }
}

fn report(
    method: MethodId,
    poles: Vec<Complex64>,
    magnitudes: Vec<f64>,
    condition: String,
) -> StabilityReport {
    let verdict = classify(&magnitudes);
    let max = magnitudes.iter().fold(0.0f64, |m, v| m.max(*v));
    StabilityReport { method, poles, magnitudes, verdict, condition, margin: 1.0 - max }
}

/// Exponentially mapped pole pair `exp(-xi*wn*dt) * (cos(wd*dt) -/+ i sin(wd*dt))`
/// shared by the hold, impulse-invariant, and matched methods.
fn exact_pole_report(method: MethodId, sys: &SdofSystem, dt: f64) -> StabilityReport {
    let alpha = (-sys.xi() * sys.omega_n() * dt).exp();
    let theta = sys.omega_d() * dt;
    let p = Complex64::from_polar(alpha, theta);
    report(
        method,
        vec![p.conj(), p],
        vec![alpha, alpha],
        "|p| = exp(-xi*omega_n*dt): stable for xi > 0, marginal at xi = 0".to_string(),
    )
}

fn backward_difference_report(method: MethodId, omega: f64, xi: f64, dt: f64, condition: String)
    -> StabilityReport
{
    let rho = 1.0 + 2.0 * xi * omega * dt + omega * omega * dt * dt;
    let wd_dt = omega * (1.0 - xi * xi).sqrt() * dt;
    let p = Complex64::new((1.0 + xi * omega * dt) / rho, wd_dt / rho);
    let mag = 1.0 / rho.sqrt();
    report(method, vec![p.conj(), p], vec![mag, mag], condition)
}

/// Closed-form stability verdict for `method` at `(sys, dt)`.
///
/// Pole locations and magnitudes come from the per-method closed forms; the
/// fitted methods (`lsq`, `kanamori`) first run their fit at default options.
/// For Newmark with `gamma != 1/2` the closed form is not available and the
/// eigenvalues of the three-state update matrix are used instead.
pub fn stability_verdict(method: MethodId, sys: &SdofSystem, dt: f64) -> Result<StabilityReport> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let wndt = wn * dt;
    let rep = match method {
        MethodId::Zoh | MethodId::Foh | MethodId::Impulse | MethodId::Matched
        | MethodId::SsZoh | MethodId::SsFoh | MethodId::NigamJennings => {
            exact_pole_report(method, sys, dt)
        }
        MethodId::Fe | MethodId::SsFe => {
            let p = Complex64::new(1.0 - xi * wndt, sys.omega_d() * dt);
            let mag = (1.0 - 2.0 * xi * wndt + wndt * wndt).sqrt();
            report(
                method,
                vec![p.conj(), p],
                vec![mag, mag],
                "stable iff dt < 2*xi/omega_n".to_string(),
            )
        }
        MethodId::Be | MethodId::SsBe => backward_difference_report(
            method,
            wn,
            xi,
            dt,
            "|p| = 1/sqrt(1 + 2*xi*omega_n*dt + (omega_n*dt)^2) < 1: always stable".to_string(),
        ),
        MethodId::Tustin | MethodId::SsTustin => {
            let rho = 4.0 + 4.0 * xi * wndt + wndt * wndt;
            let p = Complex64::new((4.0 - wndt * wndt) / rho, 4.0 * sys.omega_d() * dt / rho);
            let mag = ((4.0 - 4.0 * xi * wndt + wndt * wndt) / rho).sqrt();
            report(
                method,
                vec![p.conj(), p],
                vec![mag, mag],
                "stable for xi > 0, marginal at xi = 0".to_string(),
            )
        }
        MethodId::TustinPrewarp => {
            if wndt >= std::f64::consts::PI {
                return Err(Error::invalid(format!(
                    "pre-warped Tustin requires omega_n*dt < pi, got {wndt}"
                )));
            }
            // |p|^2 = a2 = (eta^2 - 2*eta*xi*wn + wn^2)/(eta^2 + 2*eta*xi*wn + wn^2)
            // with the conjugate pair centered at -a1/2.
            let eta = wn / (wndt / 2.0).tan();
            let rho = eta * eta + 2.0 * eta * xi * wn + wn * wn;
            let a1 = (2.0 * wn * wn - 2.0 * eta * eta) / rho;
            let mag = ((eta * eta - 2.0 * eta * xi * wn + wn * wn) / rho).sqrt();
            let re = -a1 / 2.0;
            let im = (mag * mag - re * re).max(0.0).sqrt();
            let p = Complex64::new(re, im);
            report(
                method,
                vec![p.conj(), p],
                vec![mag, mag],
                "stable for xi > 0 and omega_n*dt < pi, marginal at xi = 0".to_string(),
            )
        }
        MethodId::Cd => {
            let condition =
                "poles complex-conjugate: omega_n*dt < 2*sqrt(1-xi^2) (dt < 2/omega_n at xi = 0)"
                    .to_string();
            let disc = 4.0 * (1.0 - xi * xi) - wndt * wndt;
            let den = 2.0 * (1.0 + xi * wndt);
            if disc > 0.0 {
                let p = Complex64::new((2.0 - wndt * wndt) / den, wndt * disc.sqrt() / den);
                let mag = (1.0 - xi * xi * wndt * wndt).sqrt() / (1.0 + xi * wndt);
                report(method, vec![p.conj(), p], vec![mag, mag], condition)
            } else {
                let sq = (-disc).sqrt();
                let p1 = (2.0 - wndt * wndt - wndt * sq) / den;
                let p2 = (2.0 - wndt * wndt + wndt * sq) / den;
                report(
                    method,
                    vec![Complex64::new(p1, 0.0), Complex64::new(p2, 0.0)],
                    vec![p1.abs(), p2.abs()],
                    condition,
                )
            }
        }
        MethodId::Lsq => {
            let fit = tf::lsq_tf(sys, dt, &tf::LsqOptions::default_for(dt))?;
            let poles = fit.tf.poles();
            let mags = vec![poles[0].norm(), poles[1].norm()];
            report(
                method,
                poles.to_vec(),
                mags,
                "verdict from fitted poles; the refinement reflects poles into the unit circle"
                    .to_string(),
            )
        }
        MethodId::Kanamori => {
            let (lo, hi) = KANAMORI_DEFAULT_BAND;
            let fit = tf::kanamori_tf(sys, dt, lo, hi)?;
            backward_difference_report(
                method,
                fit.omega_eff,
                fit.xi_eff,
                dt,
                format!(
                    "stable iff xi_eff > -omega_eff*dt/2 (fitted omega_eff = {:.6}, xi_eff = {:.6})",
                    fit.omega_eff, fit.xi_eff
                ),
            )
        }
        MethodId::Newmark(params) => newmark_report(sys, dt, params)?,
    };
    Ok(rep)
}

fn newmark_report(sys: &SdofSystem, dt: f64, params: NewmarkParams) -> Result<StabilityReport> {
    let method = MethodId::Newmark(params);
    let (wn, xi) = (sys.omega_n(), sys.xi());
    let beta = params.beta();
    let condition = if beta >= 0.25 {
        "unconditionally bounded for beta >= 1/4 (marginal at xi = 0)".to_string()
    } else {
        format!(
            "stable iff dt < 2*sqrt(1-xi^2)/(omega_n*sqrt(1-4*beta)) = {:.6} s",
            2.0 * (1.0 - xi * xi).sqrt() / (wn * (1.0 - 4.0 * beta).sqrt())
        )
    };
    if params.gamma() == 0.5 {
        // Closed form in the dimensionless groups b1 = (omega_n*dt)^2 and
        // b2 = 2*xi*omega_n*dt. The zero eigenvalue is structural.
        let b1 = wn * wn * dt * dt;
        let b2 = 2.0 * xi * wn * dt;
        let delta = 1.0 + b2 / 2.0 + beta * b1;
        let disc = b1 * b1 * (beta - 0.25) + b1 - b2 * b2 / 4.0;
        let re = (1.0 + b1 * (beta - 0.5)) / delta;
        let mut poles = if disc >= 0.0 {
            let im = disc.sqrt() / delta;
            vec![Complex64::new(re, -im), Complex64::new(re, im)]
        } else {
            let off = (-disc).sqrt() / delta;
            vec![Complex64::new(re - off, 0.0), Complex64::new(re + off, 0.0)]
        };
        let mags = if disc >= 0.0 {
            let mag = ((1.0 + beta * b1 - b2 / 2.0) / (1.0 + beta * b1 + b2 / 2.0)).sqrt();
            vec![mag, mag, 0.0]
        } else {
            vec![poles[0].norm(), poles[1].norm(), 0.0]
        };
        poles.push(Complex64::new(0.0, 0.0));
        Ok(report(method, poles, mags, condition))
    } else {
        let dss = crate::steppers::newmark_dss(sys, dt, params)?;
        let poles = dss_eigenvalues(&dss)?;
        let mags: Vec<f64> = poles.iter().map(|p| p.norm()).collect();
        Ok(report(method, poles, mags, condition))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::TAU;

    #[test]
    fn zoh_biquad_pole_magnitudes() {
        let sys = SdofSystem::new(TAU, 0.05).unwrap();
        let dt = 0.01;
        let tf = tf::zoh_tf(&sys, dt).unwrap();
        let expected = (-sys.xi() * sys.omega_n() * dt).exp();
        for p in biquad_poles(&tf) {
            assert_relative_eq!(p.norm(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn zoh_state_matrix_eigenvalues() {
        let sys = SdofSystem::new(TAU, 0.05).unwrap();
        let dt = 0.01;
        let dss = crate::ss::zoh_dss(&sys, dt, false).unwrap();
        let eigs = dss_eigenvalues(&dss).unwrap();
        let alpha = (-sys.xi() * sys.omega_n() * dt).exp();
        let theta = sys.omega_d() * dt;
        for e in &eigs {
            assert_relative_eq!(e.norm(), alpha, max_relative = 1e-12);
            assert_relative_eq!(e.re, alpha * theta.cos(), max_relative = 1e-12);
        }
    }

    #[test]
    fn fe_state_matrix_eigenvalues() {
        let sys = SdofSystem::new(TAU, 0.05).unwrap();
        let dt = 0.01;
        let dss = crate::ss::fe_dss(&sys, dt, false).unwrap();
        let eigs = dss_eigenvalues(&dss).unwrap();
        let expected_re = 1.0 - sys.xi() * sys.omega_n() * dt;
        let expected_im = sys.omega_d() * dt;
        for e in &eigs {
            assert_relative_eq!(e.re, expected_re, max_relative = 1e-12);
            assert_relative_eq!(e.im.abs(), expected_im, max_relative = 1e-12);
        }
    }

    #[test]
    fn forward_euler_short_period_is_unstable() {
        // T_n = 0.05 s: 2*xi/omega_n = 7.96e-4 < dt = 0.01.
        let sys = SdofSystem::from_period(0.05, 0.05).unwrap();
        let rep = stability_verdict(MethodId::Fe, &sys, 0.01).unwrap();
        assert_eq!(rep.verdict, Verdict::Unstable);
        assert!(rep.margin < 0.0);
    }

    #[test]
    fn zoh_marginal_without_damping() {
        let sys = SdofSystem::new(TAU, 0.0).unwrap();
        let rep = stability_verdict(MethodId::Zoh, &sys, 0.01).unwrap();
        assert_eq!(rep.verdict, Verdict::Marginal);
    }

    #[test]
    fn newmark_average_acceleration_never_exceeds_unit_radius() {
        let params = NewmarkParams::average_acceleration();
        for dt in [0.001, 0.01, 0.1, 1.0, 100.0] {
            let sys = SdofSystem::new(TAU, 0.02).unwrap();
            let rep = stability_verdict(MethodId::Newmark(params), &sys, dt).unwrap();
            assert_eq!(rep.verdict, Verdict::Stable, "dt = {dt}");
        }
        // Zero damping: exactly on the circle.
        let sys = SdofSystem::new(TAU, 0.0).unwrap();
        let rep = stability_verdict(MethodId::Newmark(params), &sys, 0.3).unwrap();
        assert_eq!(rep.verdict, Verdict::Marginal);
    }

    #[test]
    fn newmark_linear_acceleration_boundary_location() {
        let sys = SdofSystem::new(TAU, 0.0).unwrap();
        let params = NewmarkParams::linear_acceleration();
        // Just inside: bounded (marginal at xi = 0). Just outside: unstable.
        let inside = stability_verdict(MethodId::Newmark(params), &sys, 0.54 * sys.period())
            .unwrap();
        assert_ne!(inside.verdict, Verdict::Unstable);
        let outside = stability_verdict(MethodId::Newmark(params), &sys, 0.56 * sys.period())
            .unwrap();
        assert_eq!(outside.verdict, Verdict::Unstable);
    }

    #[test]
    fn newmark_coefficient_magnitude_closed_form() {
        // Complex branch: |lambda| = sqrt((1 + beta*b1 - b2/2)/(1 + beta*b1 + b2/2)).
        let sys = SdofSystem::from_period(0.4, 0.08).unwrap();
        let dt = 0.02;
        let params = NewmarkParams::average_acceleration();
        let rep = stability_verdict(MethodId::Newmark(params), &sys, dt).unwrap();
        let dss = crate::steppers::newmark_dss(&sys, dt, params).unwrap();
        let eigs = dss_eigenvalues(&dss).unwrap();
        let mut expected: Vec<f64> = eigs.iter().map(|e| e.norm()).collect();
        expected.sort_by(f64::total_cmp);
        let mut got = rep.magnitudes.clone();
        got.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(&expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn newmark_third_eigenvalue_is_zero() {
        let sys = SdofSystem::from_period(1.0, 0.05).unwrap();
        let dss =
            crate::steppers::newmark_dss(&sys, 0.01, NewmarkParams::average_acceleration())
                .unwrap();
        let eigs = dss_eigenvalues(&dss).unwrap();
        assert!(eigs.iter().any(|e| e.norm() == 0.0));
        // And the actual 3x3 determinant is numerically negligible.
        let a = dss.a_d();
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        assert_abs_diff_eq!(det, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn central_difference_real_pole_branch() {
        // xi = 0, wn*dt > 2: real poles, one outside the circle.
        let sys = SdofSystem::new(1.0, 0.0).unwrap();
        let rep = stability_verdict(MethodId::Cd, &sys, 2.01).unwrap();
        assert_eq!(rep.verdict, Verdict::Unstable);
        assert!(rep.poles.iter().all(|p| p.im == 0.0));
        // Just inside the bound: marginal at zero damping.
        let rep = stability_verdict(MethodId::Cd, &sys, 1.99).unwrap();
        assert_ne!(rep.verdict, Verdict::Unstable);
    }

    #[test]
    fn classification_bands() {
        assert_eq!(classify(&[0.5, 0.9]), Verdict::Stable);
        assert_eq!(classify(&[1.0]), Verdict::Marginal);
        assert_eq!(classify(&[1.0 - 1e-13]), Verdict::Marginal);
        assert_eq!(classify(&[1.0 + 1e-6]), Verdict::Unstable);
    }
}
