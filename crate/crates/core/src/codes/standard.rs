use super::{LinearCode, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    /// Code generated by `[I_k | P]`.
    pub code: LinearCode,
    /// `permutation[j]` is the input column now at position `j`.
    pub permutation: Vec<usize>,
}

/// Brings a generator into systematic form `[I_k | P]` using row operations
/// and a column permutation.
///
/// Pivot columns are taken from `pivot_hint` first (in the given order), then
/// from the remaining columns left to right. Pivots move to the front in the
/// order they were found; other columns keep their relative order.
pub fn standard_form(code: &LinearCode, pivot_hint: Option<&[usize]>) -> Result<StandardForm> {
    let n = code.n();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for &c in pivot_hint.unwrap_or(&[]) {
        if c < n && !order.contains(&c) {
            order.push(c);
        }
    }
    order.extend((0..n).filter(|c| !pivot_hint.unwrap_or(&[]).contains(c)));

    let mut rows = code.generator().to_vec();
    let pivots = code.field().rref(&mut rows, &order);
    // rank is k by construction of LinearCode
    debug_assert_eq!(pivots.len(), code.k());

    let mut permutation = pivots.clone();
    permutation.extend((0..n).filter(|c| !pivots.contains(c)));
    let gen = rows.iter().map(|r| permutation.iter().map(|&c| r[c]).collect()).collect();
    Ok(StandardForm { code: LinearCode::new(code.q(), gen)?, permutation })
}
