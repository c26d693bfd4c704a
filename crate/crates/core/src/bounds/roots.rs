use super::{BoundsError, Result};

/// Absolute tolerance on the bracketed variable for every root search here.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// Coarsest tolerance accepted by the `*_with_tolerance` entry points.
pub const MAX_TOLERANCE: f64 = 1e-3;

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= MAX_TOLERANCE {
        Ok(())
    } else {
        Err(BoundsError::Invalid(format!("tolerance {tol} outside (0, {MAX_TOLERANCE}]")))
    }
}

/// Finds a root of `f` on `[lo, hi]` by bisection, given `f(lo)` and `f(hi)`
/// of opposite signs (either may be exactly zero).
///
/// Iterates until the bracket is narrower than `tol` and returns its midpoint.
/// The iteration count depends only on the inputs, so results are
/// bit-for-bit reproducible.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64, name: &str) -> Result<f64> {
    if !(lo <= hi) || !(tol > 0.0) {
        return Err(BoundsError::Invalid(format!("bad bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(BoundsError::NoCrossing(name.to_string()));
    }
    let lo_positive = f_lo > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
