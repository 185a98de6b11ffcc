//! Deterministic text encoding for machine-readable output: every number is
//! printed with 17 significant digits so that identical inputs produce
//! byte-identical documents.

/// Formats an `f64` with 17 significant digits in scientific notation.
/// The output is a valid JSON number.
pub fn fmt_sig17(x: f64) -> String {
    if x.is_nan() {
        // JSON has no NaN; encode as null at the call sites that allow it.
        return "null".into();
    }
    format!("{x:.16e}")
}

/// Complex value as a two-field JSON object.
pub fn fmt_complex(re: f64, im: f64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", fmt_sig17(re), fmt_sig17(im))
}
