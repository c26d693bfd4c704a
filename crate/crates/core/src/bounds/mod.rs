//! Asymptotic rate bounds and the length lower bounds they imply for minimal
//! codes.
//!
//! Every minimal `[n, k, d]_q` code has `d ≥ (q−1)(k−1)+1`, so asymptotically
//! its rate is at most `δ/(q−1)`. This cap increases in `δ` while any upper
//! bound on general codes decreases, so the two cross exactly once; the rate
//! at the crossing bounds `liminf m(k,q)/k` from below by its reciprocal.
//!
//! Two versions of the excess `ε(q)` over `q` are kept apart:
//! [`liminf_lower_bound`] finds the true crossing with a given profile, while
//! [`epsilon_proof`] solves the closed-form sufficient inequality whose root is
//! provably increasing in `q` but slightly smaller.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod epsilon;
mod functions;
mod profile;
mod report;
mod roots;

pub use epsilon::{
    bound_gap_table, bound_gap_table_with_tolerance, epsilon_monotonicity_audit, epsilon_proof, epsilon_proof_extended,
    epsilon_proof_with_tolerance, liminf_table, liminf_table_with_tolerance, EpsilonSolution, GapRow, LiminfRow,
    MonotonicityAudit,
};
pub use functions::{entropy_q, minimal_rate_cap, mrrw_q, plotkin_asymptotic, singleton_asymptotic};
pub use profile::{
    curve_dump, liminf_lower_bound, liminf_lower_bound_with_tolerance, BoundProfile, Crossing, CurveSample,
    CURVE_COLUMNS,
};
pub use report::{OutputFormat, Table};
pub use roots::{bisect, BISECTION_TOLERANCE, MAX_TOLERANCE};

use crate::field::NotPrimePower;

/// Samples used by the monotonicity audits.
pub const AUDIT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("{what} = {value} lies outside [{lo}, {hi}]")]
    Domain { what: &'static str, value: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    NotPrimePower(#[from] NotPrimePower),
    #[error("q must be at least 2, got {0}")]
    FieldTooSmall(u64),
    #[error("no sign change of {0} on the search interval")]
    NoCrossing(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = BoundsError> = std::result::Result<T, E>;
