//! Arithmetic in GF(2) and GF(3) on `u8` symbols.

use super::{GfError, Result};
use crate::field::FieldOrder;

/// Prime field with table-driven inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PrimeField {
    q: u8,
}

const INV2: [u8; 2] = [0, 1];
const INV3: [u8; 3] = [0, 1, 2];

impl PrimeField {
    pub(crate) fn new(q: FieldOrder) -> Result<Self> {
        match q.get() {
            2 | 3 => Ok(PrimeField { q: q.get() as u8 }),
            _ => Err(GfError::UnsupportedField(q)),
        }
    }

    #[inline]
    pub(crate) fn order(self) -> u8 {
        self.q
    }

    #[inline]
    pub(crate) fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.q
    }

    #[inline]
    pub(crate) fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub(crate) fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.q
    }

    #[inline]
    pub(crate) fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        if self.q == 2 {
            INV2[a as usize]
        } else {
            INV3[a as usize]
        }
    }

    /// `dst += factor * src`
    pub(crate) fn axpy(self, dst: &mut [u8], factor: u8, src: &[u8]) {
        if factor == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(factor, s));
        }
    }

    /// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
    pub(crate) fn normalize(self, v: &mut [u8]) -> bool {
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return false;
        };
        if lead != 1 {
            let s = self.inv(lead);
            for x in v.iter_mut() {
                *x = self.mul(*x, s);
            }
        }
        true
    }

    pub(crate) fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Reduces `rows` in place to reduced row echelon form, trying pivot
    /// columns in `order`. Returns the pivot columns in row order.
    pub(crate) fn rref(self, rows: &mut [Vec<u8>], order: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for &col in order {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(next, found);
            let s = self.inv(rows[next][col]);
            for x in rows[next].iter_mut() {
                *x = self.mul(*x, s);
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row[col] != 0 {
                    let f = self.sub(0, row[col]);
                    self.axpy(row, f, &pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }
}

/// Rank of a list of vectors over GF(q), `q ∈ {2, 3}`.
pub fn rank(q: FieldOrder, vectors: &[Vec<u8>]) -> Result<usize> {
    let field = PrimeField::new(q)?;
    let Some(width) = vectors.first().map(Vec::len) else {
        return Ok(0);
    };
    let mut rows = vectors.to_vec();
    let order: Vec<usize> = (0..width).collect();
    Ok(field.rref(&mut rows, &order).len())
}
