use rayon::prelude::*;
use serde::Serialize;

use super::functions::{entropy_real, mrrw_real};
use super::profile::{crossing_with_cap, liminf_lower_bound_with_tolerance, BoundProfile};
use super::roots::{bisect, check_tolerance, BISECTION_TOLERANCE};
use super::{BoundsError, Result, AUDIT_SAMPLES};
use crate::field::FieldOrder;

/// Root of the closed-form sufficient inequality, with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonSolution {
    pub q: u64,
    /// `ε(q)`, so that `m(k,q) ≥ (q + ε(q))·k` for large `k`.
    pub epsilon: f64,
    /// `δ_c(q) = (q−1)/(q+ε)`.
    pub delta_c: f64,
    /// `A(q) = (q−1)/(q(q+ε))·C(q)`, the MRRW entropy argument at `δ_c`.
    pub a: f64,
    /// `C(q) = ε + 2 − 2√(ε+1)`.
    pub c: f64,
    /// `(q−1)/δ*` for the true MRRW crossing, for comparison.
    pub liminf_ratio: f64,
}

impl EpsilonSolution {
    /// `(q + ε)·H_q(A)`; at most 1 whenever the closed form holds.
    pub fn mrrw_product(&self) -> f64 {
        let q = self.q as f64;
        (q + self.epsilon) * entropy_real(self.a, q)
    }
}

pub(crate) fn c_of(eps: f64) -> f64 {
    eps + 2.0 - 2.0 * (eps + 1.0).sqrt()
}

/// Left side of the sufficient inequality minus one.
fn closed_form_excess(eps: f64, q: f64) -> f64 {
    let c = c_of(eps);
    (q - 1.0) / q * c * (std::f64::consts::E * q * (q + eps) / c).ln() / q.ln() - 1.0
}

fn solve(q: u64, tol: f64) -> Result<EpsilonSolution> {
    let qf = q as f64;
    let epsilon = bisect(|e| closed_form_excess(e, qf), 1.0, 2.0, tol, "epsilon")?;
    let c = c_of(epsilon);
    let crossing = crossing_with_cap(qf, "mrrw", |d| mrrw_real(d, qf), tol)?;
    Ok(EpsilonSolution {
        q,
        epsilon,
        delta_c: (qf - 1.0) / (qf + epsilon),
        a: (qf - 1.0) / (qf * (qf + epsilon)) * c,
        c,
        liminf_ratio: crossing.liminf_ratio,
    })
}

/// Solves `((q−1)/q)·C·log_q(e·q·(q+ε)/C) = 1` for `ε ∈ [1, 2]`.
pub fn epsilon_proof(q: FieldOrder) -> Result<EpsilonSolution> {
    solve(q.get(), BISECTION_TOLERANCE)
}

/// [`epsilon_proof`] with a bisection tolerance in `(0, 1e-3]`.
pub fn epsilon_proof_with_tolerance(q: FieldOrder, tol: f64) -> Result<EpsilonSolution> {
    check_tolerance(tol)?;
    solve(q.get(), tol)
}

/// [`epsilon_proof`] with `q` treated as a real parameter, so any integer
/// `q ≥ 2` is accepted. Used to probe the behaviour as `q → ∞`.
pub fn epsilon_proof_extended(q: u64) -> Result<EpsilonSolution> {
    if q < 2 {
        return Err(BoundsError::FieldTooSmall(q));
    }
    solve(q, BISECTION_TOLERANCE)
}

/// Result of [`epsilon_monotonicity_audit`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityAudit {
    pub values: Vec<(u64, f64)>,
    /// `ε` strictly increases along the list.
    pub strictly_increasing: bool,
    /// For each `ℓ` in the list, `x ↦ ((x−1)/x)·C_ℓ·ln((e/C_ℓ)·x·(x+ε(ℓ)))/ln x`
    /// is strictly decreasing on sampled points of `[ℓ, 4ℓ]`.
    pub auxiliary_decreasing: bool,
}

impl MonotonicityAudit {
    pub fn holds(&self) -> bool {
        self.strictly_increasing && self.auxiliary_decreasing
    }
}

fn auxiliary(x: f64, eps: f64, c: f64) -> f64 {
    (x - 1.0) / x * c * (std::f64::consts::E / c * x * (x + eps)).ln() / x.ln()
}

fn auxiliary_decreasing(sol: &EpsilonSolution) -> bool {
    let l = sol.q as f64;
    let mut prev = f64::INFINITY;
    for i in 0..AUDIT_SAMPLES {
        let x = l + 3.0 * l * i as f64 / (AUDIT_SAMPLES - 1) as f64;
        let v = auxiliary(x, sol.epsilon, sol.c);
        if !(v < prev) {
            return false;
        }
        prev = v;
    }
    true
}

/// Checks empirically that `ε` increases along `q_list` (integers ≥ 2, via
/// [`epsilon_proof_extended`]).
pub fn epsilon_monotonicity_audit(q_list: &[u64]) -> Result<MonotonicityAudit> {
    let sols: Vec<EpsilonSolution> = q_list.par_iter().map(|&q| epsilon_proof_extended(q)).collect::<Result<_>>()?;
    let strictly_increasing = sols.windows(2).all(|w| w[0].epsilon < w[1].epsilon);
    let auxiliary_decreasing = sols.par_iter().all(auxiliary_decreasing);
    Ok(MonotonicityAudit {
        values: sols.iter().map(|s| (s.q, s.epsilon)).collect(),
        strictly_increasing,
        auxiliary_decreasing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiminfRow {
    pub q: u64,
    pub delta_star: f64,
    pub rate_star: f64,
    pub liminf_ratio: f64,
}

/// MRRW crossing for each `q`, in input order.
pub fn liminf_table(q_list: &[FieldOrder]) -> Result<Vec<LiminfRow>> {
    liminf_table_with_tolerance(q_list, BISECTION_TOLERANCE)
}

pub fn liminf_table_with_tolerance(q_list: &[FieldOrder], tol: f64) -> Result<Vec<LiminfRow>> {
    q_list
        .par_iter()
        .map(|&q| {
            let c = liminf_lower_bound_with_tolerance(&BoundProfile::mrrw(q), tol)?;
            Ok(LiminfRow { q: q.get(), delta_star: c.delta_star, rate_star: c.rate_star, liminf_ratio: c.liminf_ratio })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub q: u64,
    pub liminf_ratio: f64,
    /// `liminf_ratio − q`, the best excess this method gives.
    pub gap: f64,
    /// Closed-form `ε(q)`, never larger than `gap`.
    pub epsilon: f64,
}

/// Compares the true crossing with the closed-form `ε(q)`, in input order.
pub fn bound_gap_table(q_list: &[FieldOrder]) -> Result<Vec<GapRow>> {
    bound_gap_table_with_tolerance(q_list, BISECTION_TOLERANCE)
}

pub fn bound_gap_table_with_tolerance(q_list: &[FieldOrder], tol: f64) -> Result<Vec<GapRow>> {
    q_list
        .par_iter()
        .map(|&q| {
            let s = epsilon_proof_with_tolerance(q, tol)?;
            Ok(GapRow {
                q: q.get(),
                liminf_ratio: s.liminf_ratio,
                gap: s.liminf_ratio - q.get() as f64,
                epsilon: s.epsilon,
            })
        })
        .collect()
}

/// `A(q)` straight from the MRRW entropy argument at `δ_c`, for cross-checks.
#[cfg(test)]
pub(crate) fn a_direct(sol: &EpsilonSolution) -> f64 {
    super::functions::mrrw_argument(sol.delta_c, sol.q as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64) -> FieldOrder {
        FieldOrder::new(q).unwrap()
    }

    #[test]
    fn binary_epsilon() {
        let s = epsilon_proof(fq(2)).unwrap();
        assert!((s.epsilon - 1.5204).abs() < 1e-4);
        assert!(s.epsilon > 1.5204);
        assert!(s.c > 0.0 && s.delta_c > 0.0 && s.delta_c < 0.5);
        assert!(s.liminf_ratio > 3.0);
        assert!(closed_form_excess(s.epsilon, 2.0).abs() < 1e-10);
    }

    #[test]
    fn a_matches_the_mrrw_argument() {
        for q in [2, 3, 4, 5, 7, 8, 9, 49, 64] {
            let s = epsilon_proof(fq(q)).unwrap();
            assert!((s.a - a_direct(&s)).abs() < 1e-12, "q={q}: {} vs {}", s.a, a_direct(&s));
        }
    }

    #[test]
    fn product_stays_below_one() {
        for q in [2, 3, 4, 5, 7, 8, 16, 64] {
            let s = epsilon_proof(fq(q)).unwrap();
            assert!(s.mrrw_product() <= 1.0 + 1e-9, "q={q}: {}", s.mrrw_product());
        }
    }

    #[test]
    fn extended_rejects_q_below_two() {
        assert_eq!(epsilon_proof_extended(1), Err(BoundsError::FieldTooSmall(1)));
        assert!(epsilon_proof_extended(6).is_ok());
    }

    #[test]
    fn repeated_q_is_not_strictly_increasing() {
        let audit = epsilon_monotonicity_audit(&[2, 2]).unwrap();
        assert!(!audit.strictly_increasing);
        assert!(audit.auxiliary_decreasing);
        assert!(!audit.holds());
    }

    #[test]
    fn auxiliary_starts_at_one() {
        for q in [2u64, 3, 8, 64] {
            let s = epsilon_proof_extended(q).unwrap();
            assert!((auxiliary(q as f64, s.epsilon, s.c) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn coarse_tolerance_stays_close() {
        let s = epsilon_proof_with_tolerance(fq(2), 1e-3).unwrap();
        assert!((s.epsilon - epsilon_proof(fq(2)).unwrap().epsilon).abs() < 1e-3);
        assert!(matches!(epsilon_proof_with_tolerance(fq(2), 0.0), Err(BoundsError::Invalid(_))));
        assert!(matches!(liminf_table_with_tolerance(&[fq(2)], 0.01), Err(BoundsError::Invalid(_))));
    }

    #[test]
    fn tables_keep_input_order() {
        let qs: Vec<FieldOrder> = [8, 2, 5].into_iter().map(fq).collect();
        let rows = liminf_table(&qs).unwrap();
        assert_eq!(rows.iter().map(|r| r.q).collect::<Vec<_>>(), [8, 2, 5]);
        let gaps = bound_gap_table(&qs).unwrap();
        assert_eq!(gaps.iter().map(|r| r.q).collect::<Vec<_>>(), [8, 2, 5]);
        for g in gaps {
            assert!(g.epsilon <= g.gap);
        }
    }
}
