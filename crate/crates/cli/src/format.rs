//! Number formatting shared by the human-readable outputs.

/// Formats `x` with six significant digits, fixed-point.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999995 → 10.00000).
    if s.trim_start_matches('-')
        .replace('.', "")
        .trim_start_matches('0')
        .len()
        > 6
        && decimals > 0
    {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

pub fn sig6_or_undefined(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), sig6)
}
