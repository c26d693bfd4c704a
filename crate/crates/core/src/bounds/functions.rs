//! Rate functions of the relative distance `δ ∈ [0, (q−1)/q]`.
//!
//! The public functions take a validated [`FieldOrder`]; the `*_real`
//! variants take `q` as a real parameter and skip validation.

use super::{BoundsError, Result};
use crate::field::FieldOrder;

pub(crate) fn check_delta(what: &'static str, x: f64, q: f64) -> Result<()> {
    let hi = (q - 1.0) / q;
    if (0.0..=hi).contains(&x) {
        Ok(())
    } else {
        Err(BoundsError::Domain { what, value: x, lo: 0.0, hi })
    }
}

/// `H_q(x) = −x log_q(x/(q−1)) − (1−x) log_q(1−x)`, with `0·log 0 = 0`.
pub fn entropy_q(x: f64, q: FieldOrder) -> Result<f64> {
    let q = q.get() as f64;
    check_delta("x", x, q)?;
    Ok(entropy_real(x, q))
}

pub(crate) fn entropy_real(x: f64, q: f64) -> f64 {
    let x = x.clamp(0.0, (q - 1.0) / q);
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * (x / (q - 1.0)).ln();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln();
    }
    (h / q.ln()).clamp(0.0, 1.0)
}

/// Aaltonen's q-ary MRRW bound
/// `H_q((q−1−(q−2)δ − 2√((q−1)δ(1−δ))) / q)`.
pub fn mrrw_q(delta: f64, q: FieldOrder) -> Result<f64> {
    let q = q.get() as f64;
    check_delta("delta", delta, q)?;
    Ok(mrrw_real(delta, q))
}

/// Argument of the entropy in the MRRW bound, clamped into `[0, (q−1)/q]`.
pub(crate) fn mrrw_argument(delta: f64, q: f64) -> f64 {
    let radicand = ((q - 1.0) * delta * (1.0 - delta)).max(0.0);
    let inner = q - 1.0 - (q - 2.0) * delta - 2.0 * radicand.sqrt();
    inner.clamp(0.0, q - 1.0) / q
}

pub(crate) fn mrrw_real(delta: f64, q: f64) -> f64 {
    entropy_real(mrrw_argument(delta, q), q)
}

/// Asymptotic Plotkin bound `max(0, 1 − qδ/(q−1))`.
pub fn plotkin_asymptotic(delta: f64, q: FieldOrder) -> Result<f64> {
    let q = q.get() as f64;
    check_delta("delta", delta, q)?;
    Ok(plotkin_real(delta, q))
}

pub(crate) fn plotkin_real(delta: f64, q: f64) -> f64 {
    (1.0 - q * delta / (q - 1.0)).max(0.0)
}

/// Asymptotic Singleton bound `1 − δ`.
pub fn singleton_asymptotic(delta: f64, q: FieldOrder) -> Result<f64> {
    check_delta("delta", delta, q.get() as f64)?;
    Ok(1.0 - delta)
}

/// Rate cap `δ/(q−1)` satisfied by minimal codes.
pub fn minimal_rate_cap(delta: f64, q: FieldOrder) -> Result<f64> {
    let q = q.get() as f64;
    check_delta("delta", delta, q)?;
    Ok(delta / (q - 1.0))
}
