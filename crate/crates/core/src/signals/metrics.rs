//! Error metrics comparing a numerical response against a reference.

use crate::error::{Error, Result};
use crate::signal::Signal;

fn check_aligned(u: &Signal, reference: &Signal) -> Result<()> {
    if u.len() != reference.len() {
        return Err(Error::invalid(format!(
            "signals must have equal length: {} vs {}",
            u.len(),
            reference.len()
        )));
    }
    if (u.dt() - reference.dt()).abs() > 1e-12 * reference.dt() {
        return Err(Error::DtMismatch { system_dt: reference.dt(), input_dt: u.dt() });
    }
    Ok(())
}

/// Signed peak-response error in percent:
/// `(max|u| - max|u_ref|) / max|u_ref| * 100`.
pub fn peak_error(u: &Signal, reference: &Signal) -> Result<f64> {
    check_aligned(u, reference)?;
    let ref_peak = reference.peak();
    if ref_peak == 0.0 {
        return Err(Error::DegenerateReference("reference peak is zero".to_string()));
    }
    Ok((u.peak() - ref_peak) / ref_peak * 100.0)
}

/// Energy-normalized root-mean-square error in percent:
/// `sqrt(sum |u - u_ref|^2) / sqrt(sum |u_ref|^2) * 100`.
pub fn rms_error(u: &Signal, reference: &Signal) -> Result<f64> {
    check_aligned(u, reference)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in u.samples().iter().zip(reference.samples()) {
        num += (a - b) * (a - b);
        den += b * b;
    }
    if den == 0.0 {
        return Err(Error::DegenerateReference("reference energy is zero".to_string()));
    }
    Ok((num / den).sqrt() * 100.0)
}
