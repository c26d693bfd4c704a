//! Exact linear algebra and minimality checks for codes over GF(2) and GF(3).
//!
//! A code is given by a `k × n` generator matrix. Every nonzero codeword can be
//! enumerated (subject to a size guard), which is what the minimality and
//! weight routines rely on. The geometric side views the columns of the
//! generator as a multiset of points of `PG(k−1, q)`; a code is minimal exactly
//! when these points form a strong blocking set, and
//! [`minimal_iff_strong_blocking_audit`] runs both checks against each other.

mod code;
mod geometry;
mod gf;
mod io;
mod standard;

pub use code::{ashikhmin_barg_check, Codeword, CodewordIter, LinearCode, MinimalityCheck, Support, WeightProfile};
pub use geometry::{is_strong_blocking_set, minimal_iff_strong_blocking_audit, BlockingCheck, ProjectivePointSet};
pub use gf::rank;
pub use io::{parse_matrix, write_matrix};
pub use standard::{standard_form, StandardForm};

use crate::field::FieldOrder;

/// Upper limit on `q^k` for streaming codewords.
pub const CODEWORD_GUARD: u64 = 1 << 26;
/// Upper limit on `q^k` for the quadratic minimality check.
pub const MINIMALITY_GUARD: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("field of order {0} is not supported (exact arithmetic covers q = 2 and q = 3)")]
    UnsupportedField(FieldOrder),
    #[error("q^k = {q}^{k} exceeds the enumeration limit of {limit}")]
    DimensionTooLarge { q: u64, k: usize, limit: u64 },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("invalid generator matrix: {0}")]
    InvalidMatrix(String),
    #[error("column {0} of the generator matrix is zero")]
    DegenerateColumn(usize),
    #[error("minimality and strong-blocking checks disagree (minimal = {minimal}, strong blocking = {blocking})")]
    OracleDisagreement { minimal: bool, blocking: bool },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = GfError> = std::result::Result<T, E>;

pub(crate) fn check_guard(q: FieldOrder, k: usize, limit: u64) -> Result<u64> {
    let count = u32::try_from(k).ok().and_then(|k| q.get().checked_pow(k)).filter(|&c| c <= limit);
    count.ok_or(GfError::DimensionTooLarge { q: q.get(), k, limit })
}
