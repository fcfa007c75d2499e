//! Lossless float formatting for the JSON and CSV emitters.
//!
//! Values are printed with 17 significant digits, enough to round-trip any
//! f64 exactly, so downstream tools can rebuild bit-identical coefficients.

/// One float at 17 significant digits in scientific notation.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON array of floats.
pub fn json_vector(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| fmt_float(*v)).collect();
    format!("[{}]", items.join(","))
}

/// JSON array of arrays, row-major.
pub fn json_matrix(rows: &[Vec<f64>]) -> String {
    let items: Vec<String> = rows.iter().map(|r| json_vector(r)).collect();
    format!("[{}]", items.join(","))
}
