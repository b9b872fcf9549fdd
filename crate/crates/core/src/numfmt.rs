//! Locale-independent fixed-notation number formatting for CSV, plot data
//! and pulse traces.

/// Magnitudes below this are written as `0`.
pub const ZERO_FLOOR: f64 = 1e-14;

/// Formats `x` with 12 significant digits in fixed notation.
///
/// Values closer to zero than [`ZERO_FLOOR`] (including −0) print as `0`.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x.abs() < ZERO_FLOOR {
        return "0".to_string();
    }
    // Round in scientific form first so the exponent reflects carries
    // (9.9999999999995 → 1.00000000000e1).
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (11 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.5), "0.500000000000");
        assert_eq!(sig12(0.375), "0.375000000000");
        assert_eq!(sig12(60.0), "60.0000000000");
        assert_eq!(sig12(-160.98), "-160.980000000");
        assert_eq!(sig12(1.0 / 418.0), "0.00239234449761");
        assert_eq!(sig12(9.9999999999995), "10.0000000000");
        assert_eq!(sig12(123456789012345.0), "123456789012345");
    }

    #[test]
    fn noise_prints_as_zero() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(3.4e-17), "0");
        assert_eq!(sig12(-2e-15), "0");
    }
}
