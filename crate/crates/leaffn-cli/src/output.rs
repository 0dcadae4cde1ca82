//! CSV cell formatting: `.` decimal separator, LF line endings, no
//! thousands separators. Values are rounded at the requested precision by
//! the standard float formatter, which rounds the exact binary value with
//! ties to even.

/// Formats a value at `decimals` places, normalizing negative zero.
pub fn format_value(v: f64, decimals: usize) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.decimals$}")
}

/// Number of decimal places that display the grid abscissa exactly enough:
/// inferred from the shortest representation of the step.
pub fn grid_decimals(step: f64) -> usize {
    let s = format!("{step}");
    if s.contains(['e', 'E']) {
        return 9;
    }
    match s.find('.') {
        Some(i) => (s.len() - i - 1).min(9),
        None => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_normalized() {
        assert_eq!(format_value(-0.0, 3), "0.000");
        assert_eq!(format_value(-1.25e-10, 3), "-0.000");
    }

    #[test]
    fn grid_precision_matches_step() {
        assert_eq!(grid_decimals(0.1), 1);
        assert_eq!(grid_decimals(0.25), 2);
        assert_eq!(grid_decimals(1.0), 1);
        assert_eq!(grid_decimals(1e-7), 9);
    }
}
