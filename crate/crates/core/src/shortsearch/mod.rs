//! Exhaustive search for binary minimal codes of length `3N` and dimension
//! `N + 1`.
//!
//! Such a code, if it exists, is equivalent to one generated by
//! `[I_{N+1} | P]` where every row of `P` has weight `N`, every column of `P`
//! has even weight, and every nonzero codeword has weight in `[N+1, 2N]`.
//! Conversely any such matrix generates a minimal code, since
//! `(N+1)/(2N) > 1/2`. Writing the rows of `P` as `N`-subsets of
//! `{1, …, 2N−1}`, the search enumerates families of `N + 1` subsets
//! depth-first, with three rules cutting the tree:
//!
//! * pairwise: any two rows meet in between `(N−1)/2` and `(N+1)/2` elements;
//! * structure (`N` even): relative to any two chosen rows, a new row has
//!   block counts `a = c`, `b = d`, `|a − b| ≤ 1`;
//! * weight: every sum of chosen rows, and its complement in the final
//!   family, stays in the weight window.
//!
//! For `N ≡ 4 (mod 8)` a parity count rules the family out before any
//! search. Every outcome is returned as a [`SearchCertificate`] that can be
//! re-checked with [`verify_certificate`].

mod certificate;
mod engine;
mod family;

pub use certificate::{verify_certificate, Outcome, SearchCertificate};
pub use engine::{find_family, search, PruneCounts, SearchConfig, SearchStats, CANDIDATE_GUARD_N};
pub use family::{
    abcd_split, assemble_generator, family_window_check, ground_set, parity_obstruction, structure_check,
    weight_window_check, AbcdSplit, Subset, SubsetFamily, MAX_BITMASK_N,
};

use crate::codes::GfError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("N = {0} is out of range")]
    InvalidN(usize),
    #[error("N = {n} exceeds the configured maximum {max}")]
    Unsupported { n: usize, max: usize },
    #[error("invalid subset family: {0}")]
    InvalidFamily(String),
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("family has {rows} rows, {needed} are needed")]
    IncompleteFamily { rows: usize, needed: usize },
    #[error("certificate verification failed: {0}")]
    VerificationFailed(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Code(#[from] GfError),
}

pub type Result<T, E = SearchError> = std::result::Result<T, E>;
