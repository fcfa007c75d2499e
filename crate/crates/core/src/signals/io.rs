//! Ground-motion file parsing.
//!
//! Two plain-text layouts are accepted:
//!
//! 1. header format — optional `#` comment lines, a line `dt <seconds>`,
//!    then one acceleration value per line;
//! 2. two-column CSV — `time,accel` rows with uniform time spacing
//!    (relative jitter at most 1e-9 of the step; the first time need not be
//!    zero, only the spacing is used).

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Maximum tolerated deviation of any time stamp from the uniform grid,
/// relative to the step.
const MAX_RELATIVE_JITTER: f64 = 1e-9;

pub fn load_ground_motion(path: impl AsRef<Path>) -> Result<Signal> {
    let text = fs::read_to_string(path)?;
    parse_ground_motion(&text)
}

/// Parse ground-motion text in either supported layout.
pub fn parse_ground_motion(text: &str) -> Result<Signal> {
    // First significant line decides the layout.
    let first = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => Err(Error::Parse { line: 1, message: "file contains no data".to_string() }),
        Some((_, l)) if l.starts_with("dt") => parse_header_format(text),
        Some((_, l)) if l.contains(',') => parse_csv_format(text),
        Some((line, l)) => Err(Error::Parse {
            line,
            message: format!("expected `dt <seconds>` or `time,accel`, found `{l}`"),
        }),
    }
}

fn parse_float(tok: &str, line: usize, what: &str) -> Result<f64> {
    tok.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {what} `{}`", tok.trim()),
    })
}

fn parse_header_format(text: &str) -> Result<Signal> {
    let mut dt: Option<f64> = None;
    let mut samples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if dt.is_none() {
            let rest = line.strip_prefix("dt").ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `dt <seconds>`, found `{line}`"),
            })?;
            let value = parse_float(rest, line_no, "sample interval")?;
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("sample interval must be positive, got {value}"),
                });
            }
            dt = Some(value);
        } else {
            samples.push(parse_float(line, line_no, "acceleration value")?);
        }
    }
    let dt = dt.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing `dt <seconds>` line".to_string(),
    })?;
    if samples.is_empty() {
        return Err(Error::Parse { line: 1, message: "no acceleration samples".to_string() });
    }
    Signal::new(dt, samples)
}

fn parse_csv_format(text: &str) -> Result<Signal> {
    let mut times = Vec::new();
    let mut samples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',');
        let t = cols.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "missing time column".to_string(),
        })?;
        let a = cols.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "missing acceleration column".to_string(),
        })?;
        if cols.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected exactly two columns".to_string(),
            });
        }
        times.push(parse_float(t, line_no, "time value")?);
        samples.push(parse_float(a, line_no, "acceleration value")?);
    }
    if samples.is_empty() {
        return Err(Error::Parse { line: 1, message: "no data rows".to_string() });
    }
    if samples.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            message: "need at least two rows to determine the sample interval".to_string(),
        });
    }
    // Fit t[k] = t0 + k*dt and bound the worst deviation; comparing adjacent
    // differences directly would reject long records over parse rounding.
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::Parse {
            line: 1,
            message: format!("time column is not increasing (derived dt = {dt})"),
        });
    }
    let mut max_jitter = 0.0f64;
    for (k, &t) in times.iter().enumerate() {
        let expected = times[0] + k as f64 * dt;
        max_jitter = max_jitter.max((t - expected).abs());
    }
    if max_jitter > MAX_RELATIVE_JITTER * dt {
        return Err(Error::NonUniformSpacing { max_jitter, dt });
    }
    Signal::new(dt, samples)
}
