//! Inverse trigonometric helpers used by the closed forms.

/// Inverse cotangent on the positive half-line, `atan(1/x)`.
///
/// Only `x > 0` is ever reached by the permeance formulas, where this is the
/// principal branch with values in `(0, π/2)`. For `x <= 0` or NaN the result is NaN.
pub fn arccot(x: f64) -> f64 {
    if x > 0.0 {
        (1.0 / x).atan()
    } else {
        f64::NAN
    }
}

/// `π/2 − arccot(x)` for `x > 0`, evaluated as `atan(x)` so small arguments keep
/// full relative precision.
pub fn arccot_complement(x: f64) -> f64 {
    if x > 0.0 {
        x.atan()
    } else {
        f64::NAN
    }
}
