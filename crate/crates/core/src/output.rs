//! Plain-text number formatting for CSV output.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so regression files are bit-stable.

/// Shortest round-trip representation; scientific notation outside
/// `[1e-4, 1e15)`.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Joins formatted values with commas (no trailing newline).
pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_f64(v))
        .collect::<Vec<_>>()
        .join(",")
}
