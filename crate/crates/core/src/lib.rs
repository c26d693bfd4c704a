//! Lower bounds on the length of minimal linear codes.
//!
//! * [`codes`]: exact minimality, weight and geometry checks over GF(2) and GF(3).
//! * [`bounds`]: asymptotic rate bounds, their intersection with the
//!   minimal-code rate cap, and the closed-form `ε(q)` estimate.
//! * [`shortsearch`]: exhaustive, certificate-producing search for binary
//!   minimal codes of length `3N` and dimension `N + 1`.

pub mod bounds;
pub mod codes;
pub mod field;
pub mod shortsearch;

pub use field::FieldOrder;
