//! Field orders.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The number of elements `q` of a finite field.
///
/// Construction validates that `q` is a prime power. The exact-arithmetic
/// code routines further restrict themselves to `q ∈ {2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldOrder(u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a prime power")]
pub struct NotPrimePower(pub u64);

impl FieldOrder {
    pub const BINARY: FieldOrder = FieldOrder(2);
    pub const TERNARY: FieldOrder = FieldOrder(3);

    pub fn new(q: u64) -> Result<Self, NotPrimePower> {
        if prime_power_base(q).is_some() {
            Ok(FieldOrder(q))
        } else {
            Err(NotPrimePower(q))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_prime(self) -> bool {
        prime_power_base(self.0) == Some(self.0)
    }
}

impl TryFrom<u64> for FieldOrder {
    type Error = NotPrimePower;

    fn try_from(q: u64) -> Result<Self, Self::Error> {
        FieldOrder::new(q)
    }
}

impl From<FieldOrder> for u64 {
    fn from(q: FieldOrder) -> u64 {
        q.0
    }
}

impl fmt::Display for FieldOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Returns the prime `p` with `q = p^e`, `e ≥ 1`, found by trial division.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // no factor up to sqrt(q): q is prime
        return Some(q);
    }
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    (rest == 1).then_some(p)
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_base(q).is_some()
}
