//! Small floating-point helpers shared by the other modules.

/// Absolute floor used in relative comparisons near zero.
pub const ABS_FLOOR: f64 = 1e-300;

/// Real `k`-th root keeping the sign of `y`: `sign(y) * |y|^(1/k)`.
///
/// Only meaningful for odd `k` when `y < 0`; callers with even `k` pass
/// nonnegative values.
pub fn signed_root(y: f64, k: u32) -> f64 {
    match k {
        1 => y,
        2 => y.abs().sqrt().copysign(y),
        3 => y.cbrt(),
        _ => y.abs().powf(1.0 / k as f64).copysign(y),
    }
}

/// Relative closeness `|a - b| <= tol * max(|a|, |b|, ABS_FLOOR)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(ABS_FLOOR)
}

/// Relative error of `value` against `reference`, with the absolute floor.
pub fn rel_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(ABS_FLOOR)
}

pub(crate) fn ensure_finite(v: f64, what: &'static str) -> crate::Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::NonFinite(what))
    }
}
