use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::functions::{check_delta, mrrw_real, plotkin_real};
use super::roots::{bisect, check_tolerance, BISECTION_TOLERANCE};
use super::{BoundsError, Result};
use crate::field::FieldOrder;

#[derive(Clone)]
enum Shape {
    Mrrw,
    Plotkin,
    Singleton,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A named asymptotic upper bound `δ ↦ R` on the rate of q-ary codes.
#[derive(Clone)]
pub struct BoundProfile {
    name: String,
    q: FieldOrder,
    shape: Shape,
}

impl BoundProfile {
    pub fn mrrw(q: FieldOrder) -> Self {
        BoundProfile { name: "mrrw".into(), q, shape: Shape::Mrrw }
    }

    pub fn plotkin(q: FieldOrder) -> Self {
        BoundProfile { name: "plotkin".into(), q, shape: Shape::Plotkin }
    }

    pub fn singleton(q: FieldOrder) -> Self {
        BoundProfile { name: "singleton".into(), q, shape: Shape::Singleton }
    }

    /// Any other bounding function. It should be continuous and
    /// non-increasing on `[0, (q−1)/q]`; see [`BoundProfile::is_nonincreasing`].
    pub fn custom<F>(name: impl Into<String>, q: FieldOrder, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        BoundProfile { name: name.into(), q, shape: Shape::Custom(Arc::new(f)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn q(&self) -> FieldOrder {
        self.q
    }

    /// Right end of the domain, `(q−1)/q`.
    pub fn delta_max(&self) -> f64 {
        let q = self.q.get() as f64;
        (q - 1.0) / q
    }

    pub fn eval(&self, delta: f64) -> Result<f64> {
        check_delta("delta", delta, self.q.get() as f64)?;
        Ok(self.eval_unchecked(delta))
    }

    fn eval_unchecked(&self, delta: f64) -> f64 {
        let q = self.q.get() as f64;
        match &self.shape {
            Shape::Mrrw => mrrw_real(delta, q),
            Shape::Plotkin => plotkin_real(delta, q),
            Shape::Singleton => 1.0 - delta,
            Shape::Custom(f) => f(delta),
        }
    }

    /// Dense-sampling check that the profile never increases and stays in `[0, 1]`.
    pub fn is_nonincreasing(&self, samples: usize) -> bool {
        let top = self.delta_max();
        let mut prev = f64::INFINITY;
        for i in 0..samples.max(2) {
            let d = if i + 1 == samples.max(2) { top } else { top * i as f64 / (samples.max(2) - 1) as f64 };
            let v = self.eval_unchecked(d);
            if !(0.0..=1.0).contains(&v) || v > prev {
                return false;
            }
            prev = v;
        }
        true
    }
}

impl fmt::Debug for BoundProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundProfile").field("name", &self.name).field("q", &self.q.get()).finish()
    }
}

/// Crossing of a bound profile with the minimal-code rate cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub delta_star: f64,
    pub rate_star: f64,
    /// `(q−1)/δ* = 1/R*`, a lower bound on `liminf m(k,q)/k`.
    pub liminf_ratio: f64,
}

/// Intersects `profile` with `δ ↦ δ/(q−1)` by bisection on `δ`.
pub fn liminf_lower_bound(profile: &BoundProfile) -> Result<Crossing> {
    crossing_with_cap(profile.q().get() as f64, profile.name(), |d| profile.eval_unchecked(d), BISECTION_TOLERANCE)
}

/// [`liminf_lower_bound`] with a bisection tolerance in `(0, 1e-3]`.
pub fn liminf_lower_bound_with_tolerance(profile: &BoundProfile, tol: f64) -> Result<Crossing> {
    check_tolerance(tol)?;
    crossing_with_cap(profile.q().get() as f64, profile.name(), |d| profile.eval_unchecked(d), tol)
}

pub(crate) fn crossing_with_cap<F: Fn(f64) -> f64>(q: f64, name: &str, f: F, tol: f64) -> Result<Crossing> {
    if !(f(0.0) > 0.0) {
        return Err(BoundsError::Invalid(format!("profile {name} vanishes at δ = 0")));
    }
    let gap = |d: f64| f(d) - d / (q - 1.0);
    let top = (q - 1.0) / q;
    // profiles that meet the cap exactly at the right end (Singleton) may
    // land a rounding error above zero there
    let delta_star = if gap(top).abs() < 1e-14 { top } else { bisect(gap, 0.0, top, tol, name)? };
    Ok(Crossing { delta_star, rate_star: delta_star / (q - 1.0), liminf_ratio: (q - 1.0) / delta_star })
}

/// One row of plot-ready curve data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub delta: f64,
    /// Column name → rate.
    pub values: BTreeMap<String, f64>,
    /// Marks the row inserted at the MRRW/cap crossing.
    pub crossing: bool,
}

/// Column names of [`curve_dump`], in output order.
pub const CURVE_COLUMNS: [&str; 4] = ["mrrw", "plotkin", "singleton", "minimal_cap"];

/// MRRW, Plotkin, Singleton and the minimal-code cap on a uniform grid of
/// `grid_size` points over `[0, (q−1)/q]`, plus one row at the MRRW crossing.
pub fn curve_dump(q: FieldOrder, grid_size: usize) -> Result<Vec<CurveSample>> {
    if grid_size < 2 {
        return Err(BoundsError::Invalid(format!("grid size must be at least 2, got {grid_size}")));
    }
    let profiles = [BoundProfile::mrrw(q), BoundProfile::plotkin(q), BoundProfile::singleton(q)];
    let qf = q.get() as f64;
    let top = (qf - 1.0) / qf;
    let sample = |delta: f64, crossing: bool| {
        let mut values: BTreeMap<String, f64> =
            profiles.iter().map(|p| (p.name().to_string(), p.eval_unchecked(delta))).collect();
        values.insert("minimal_cap".into(), delta / (qf - 1.0));
        CurveSample { delta, values, crossing }
    };
    let mut rows: Vec<CurveSample> = (0..grid_size)
        .map(|i| {
            let d = if i + 1 == grid_size { top } else { top * i as f64 / (grid_size - 1) as f64 };
            sample(d, false)
        })
        .collect();
    let star = liminf_lower_bound(&profiles[0])?.delta_star;
    match rows.iter().position(|r| r.delta >= star) {
        Some(i) if rows[i].delta == star => rows[i].crossing = true,
        Some(i) => rows.insert(i, sample(star, true)),
        None => rows.push(sample(star, true)),
    }
    Ok(rows)
}
