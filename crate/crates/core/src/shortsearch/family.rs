//! Families of `N`-subsets of `{1, …, 2N−1}`, the rows of `P` in `[I_{N+1} | P]`.

use std::cmp::Ordering;
use std::fmt;

use super::{Result, SearchError};
use crate::codes::LinearCode;

/// Largest `N` whose ground set `{1, …, 2N−1}` fits the bitmask.
pub const MAX_BITMASK_N: usize = 16;

/// Subset of `{1, …, 2N−1}`; element `i` is bit `i − 1`.
///
/// Subsets are ordered lexicographically by their 0/1 indicator rows read
/// from element 1 onwards, with 1 above 0. So `{1, 2}` (`110…`) comes after
/// `{1, 3}` (`101…`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub fn from_elements(elements: &[usize]) -> Self {
        Subset(elements.iter().fold(0, |m, &i| {
            assert!((1..=32).contains(&i), "element {i} out of range");
            m | 1 << (i - 1)
        }))
    }

    /// `{lo, …, hi}`, empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Subset::from_elements(&(lo..=hi).collect::<Vec<_>>())
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Integer whose order is the lexicographic order of indicator rows.
    #[inline]
    pub fn lex_key(self) -> u32 {
        self.0.reverse_bits()
    }

    /// Indicator row over `{1, …, width}` as a `0`/`1` string.
    pub fn indicator(self, width: usize) -> String {
        (1..=width).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// Ordered rows `P_1, P_2, …` (at most `N + 1`), each an `N`-subset of
/// `{1, …, 2N−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    n: usize,
    rows: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new(n: usize, rows: Vec<Subset>) -> Result<Self> {
        if n == 0 || n > MAX_BITMASK_N {
            return Err(SearchError::InvalidN(n));
        }
        if rows.len() > n + 1 {
            return Err(SearchError::InvalidFamily(format!("{} rows exceed N + 1 = {}", rows.len(), n + 1)));
        }
        let ground = ground_set(n);
        for (j, r) in rows.iter().enumerate() {
            if r.len() != n || r.difference(ground) != Subset(0) {
                return Err(SearchError::InvalidFamily(format!(
                    "row {} = {r:?} is not an {n}-subset of {{1..{}}}",
                    j + 1,
                    2 * n - 1
                )));
            }
        }
        Ok(SubsetFamily { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn is_complete(&self) -> bool {
        self.rows.len() == self.n + 1
    }

    /// Symmetric difference of all rows.
    pub fn total_symmetric_difference(&self) -> Subset {
        self.rows.iter().fold(Subset(0), |acc, &r| acc.symmetric_difference(r))
    }

    /// Appends a row after validating it.
    pub fn push(&mut self, row: Subset) -> Result<()> {
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(row);
        *self = SubsetFamily::new(self.n, rows)?;
        Ok(())
    }

    /// Rows after the second strictly increase.
    pub fn is_canonically_ordered(&self) -> bool {
        self.rows.iter().skip(2).collect::<Vec<_>>().windows(2).all(|w| w[0] < w[1])
    }
}

pub fn ground_set(n: usize) -> Subset {
    Subset::range(1, 2 * n - 1)
}

/// Pairwise window `(N−1)/2 ≤ |P_i ∩ P_j| ≤ (N+1)/2`.
#[inline]
pub(crate) fn pair_in_window(n: usize, a: Subset, b: Subset) -> bool {
    let t = 2 * a.intersection(b).len();
    t + 1 >= n && t <= n + 1
}

/// Checks every pair of rows against the intersection window and, for a
/// complete family, that the rows sum to zero (every column of `P` even).
pub fn family_window_check(fam: &SubsetFamily) -> bool {
    let rows = fam.rows();
    let pairs_ok = rows.iter().enumerate().all(|(i, &a)| rows[i + 1..].iter().all(|&b| pair_in_window(fam.n(), a, b)));
    pairs_ok && (!fam.is_complete() || fam.total_symmetric_difference().is_empty())
}

/// Intersection counts of a subset with the four blocks cut out by two rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbcdSplit {
    /// `|I ∩ (P₁ ∖ P₂)|`
    pub a: usize,
    /// `|I ∩ P₁ ∩ P₂|`
    pub b: usize,
    /// `|I ∩ (P₂ ∖ P₁)|`
    pub c: usize,
    /// `|I ∖ (P₁ ∪ P₂)|`
    pub d: usize,
}

impl AbcdSplit {
    #[inline]
    pub(crate) fn of(i: Subset, p1: Subset, p2: Subset) -> Self {
        let both = p1.intersection(p2);
        AbcdSplit {
            a: i.intersection(p1.difference(p2)).len(),
            b: i.intersection(both).len(),
            c: i.intersection(p2.difference(p1)).len(),
            d: i.difference(Subset(p1.0 | p2.0)).len(),
        }
    }
}

/// Splits `i` along the blocks of `p1`, `p2`, which must be `N`-subsets
/// meeting in exactly `N/2` elements (so `N` is even).
pub fn abcd_split(i: Subset, p1: Subset, p2: Subset, n: usize) -> Result<AbcdSplit> {
    for (name, s) in [("I", i), ("P1", p1), ("P2", p2)] {
        if s.len() != n {
            return Err(SearchError::BlockMismatch(format!("|{name}| = {}, expected {n}", s.len())));
        }
    }
    let meet = p1.intersection(p2).len();
    if !n.is_multiple_of(2) || 2 * meet != n {
        return Err(SearchError::BlockMismatch(format!("|P1 ∩ P2| = {meet}, expected N/2 with N = {n}")));
    }
    Ok(AbcdSplit::of(i, p1, p2))
}

/// `a = c`, `b = d` and `|a − b| ≤ 1`.
#[inline]
pub fn structure_check(split: AbcdSplit) -> bool {
    split.a == split.c && split.b == split.d && split.a.abs_diff(split.b) <= 1
}

/// Codeword weights `|T| + |Δ_{j∈T} P_j|` must lie in `[N+1, 2N]` for every
/// set `T` of rows that contains `new_row`.
pub fn weight_window_check(fam: &SubsetFamily, new_row: Subset) -> bool {
    let n = fam.n();
    let rows = fam.rows();
    (0u64..1 << rows.len()).all(|mask| {
        let (size, sum) = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .fold((1, new_row), |(s, acc), (_, &r)| (s + 1, acc.symmetric_difference(r)));
        let w = size + sum.len();
        (n + 1..=2 * n).contains(&w)
    })
}

/// `N ≡ 4 (mod 8)` rules out `[3N, N+1]` binary minimal codes.
///
/// With `N ≡ 0 (mod 4)` the structure rules force every row after `P₁, P₂`
/// to meet the `N/2 − 1` columns outside `P₁ ∪ P₂` in exactly `N/4` elements. The `N − 1`
/// such rows then hold `(N−1)·N/4` ones there, which is odd when
/// `N ≡ 4 (mod 8)`, so those columns cannot all be even.
pub fn parity_obstruction(n: usize) -> bool {
    if n % 8 != 4 {
        return false;
    }
    let ones = (n - 1) * (n / 4);
    assert!(ones % 2 == 1, "parity count (N-1)·N/4 = {ones} is even for N = {n}");
    true
}

/// Builds `[I_{N+1} | P]` with row `j` of `P` the indicator of `P_j`.
pub fn assemble_generator(fam: &SubsetFamily) -> Result<LinearCode> {
    if !fam.is_complete() {
        return Err(SearchError::IncompleteFamily { rows: fam.rows().len(), needed: fam.n() + 1 });
    }
    let k = fam.n() + 1;
    let width = 2 * fam.n() - 1;
    let gen = fam
        .rows()
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let mut row = vec![0u8; k + width];
            row[j] = 1;
            for i in p.elements() {
                row[k + i - 1] = 1;
            }
            row
        })
        .collect();
    Ok(LinearCode::new(crate::field::FieldOrder::BINARY, gen)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e)
    }

    #[test]
    fn lexicographic_order_of_rows() {
        assert!(s(&[1, 2]) > s(&[1, 3]));
        assert!(s(&[2, 3]) < s(&[1, 3]));
        assert_eq!(s(&[1, 3]).indicator(4), "1010");
        let mut v = vec![s(&[2, 3]), s(&[1, 2]), s(&[1, 3])];
        v.sort();
        assert_eq!(v, [s(&[2, 3]), s(&[1, 3]), s(&[1, 2])]);
    }

    #[test]
    fn window_even_n_admits_only_half() {
        let p1 = Subset::range(1, 8);
        let p2 = Subset::range(5, 12);
        let fam = SubsetFamily::new(8, vec![p1, p2]).unwrap();
        assert!(family_window_check(&fam));
        for t in 0..=8usize {
            assert_eq!(pair_in_window(8, Subset::range(1, 8), Subset::range(9 - t, 16 - t)), t == 4, "t={t}");
        }
    }

    #[test]
    fn window_odd_n_admits_two_values() {
        let p1 = Subset::range(1, 7);
        for (t, ok) in [(2, false), (3, true), (4, true), (5, false)] {
            let p2 = Subset::range(8 - t, 14 - t);
            assert_eq!(p1.intersection(p2).len(), t);
            let fam = SubsetFamily::new(7, vec![p1, p2]).unwrap();
            assert_eq!(family_window_check(&fam), ok, "t={t}");
        }
    }

    #[test]
    fn window_rejects_small_intersections() {
        // two 6-subsets of an 11-set share at least one element
        let fam = SubsetFamily::new(6, vec![Subset::range(1, 6), Subset::range(6, 11)]).unwrap();
        assert!(!family_window_check(&fam));
        assert!(!pair_in_window(6, Subset::range(1, 6), Subset::range(7, 12)));
    }

    #[test]
    fn complete_family_needs_even_columns() {
        // the three 2-subsets of {1,2,3}
        let fam = SubsetFamily::new(2, vec![s(&[1, 2]), s(&[2, 3]), s(&[1, 3])]).unwrap();
        assert!(family_window_check(&fam));
        assert!(fam.total_symmetric_difference().is_empty());
        let odd = SubsetFamily::new(2, vec![s(&[1, 2]), s(&[2, 3]), s(&[1, 2])]).unwrap();
        assert!(!family_window_check(&odd));
    }

    #[test]
    fn splits_from_the_n8_argument() {
        let p1 = Subset::range(1, 8);
        let p2 = Subset::range(5, 12);
        let i = s(&[1, 2, 5, 6, 9, 10, 13, 14]);
        assert_eq!(abcd_split(i, p1, p2, 8).unwrap(), AbcdSplit { a: 2, b: 2, c: 2, d: 2 });
        assert_eq!(abcd_split(p1, p1, p2, 8).unwrap(), AbcdSplit { a: 4, b: 4, c: 0, d: 0 });
        let j = s(&[3, 4, 5, 6, 11, 12, 13, 14]);
        assert_eq!(abcd_split(j, p1, p2, 8).unwrap(), AbcdSplit { a: 2, b: 2, c: 2, d: 2 });
    }

    #[test]
    fn split_requires_half_intersection() {
        let p1 = Subset::range(1, 8);
        assert!(matches!(abcd_split(p1, p1, Subset::range(4, 11), 8), Err(SearchError::BlockMismatch(_))));
        assert!(matches!(abcd_split(s(&[1]), p1, Subset::range(5, 12), 8), Err(SearchError::BlockMismatch(_))));
        let p = Subset::range(1, 7);
        assert!(matches!(abcd_split(p, p, Subset::range(4, 10), 7), Err(SearchError::BlockMismatch(_))));
    }

    #[test]
    fn structure_rules() {
        assert!(structure_check(AbcdSplit { a: 2, b: 2, c: 2, d: 2 }));
        assert!(!structure_check(AbcdSplit { a: 4, b: 4, c: 0, d: 0 }));
        assert!(!structure_check(AbcdSplit { a: 3, b: 1, c: 3, d: 1 }));
        assert!(structure_check(AbcdSplit { a: 2, b: 3, c: 2, d: 3 }));
    }

    #[test]
    fn single_row_sits_at_lower_edge() {
        let empty = SubsetFamily::new(5, vec![]).unwrap();
        assert!(weight_window_check(&empty, Subset::range(1, 5)));
    }

    #[test]
    fn full_family_gives_the_hyperplane_codeword() {
        let rows = vec![s(&[1, 2]), s(&[2, 3])];
        let fam = SubsetFamily::new(2, rows).unwrap();
        // T = all three rows: 3 + 0 = N + 1
        assert!(weight_window_check(&fam, s(&[1, 3])));
    }

    #[test]
    fn n6_five_rows_overflow_the_window() {
        let p1 = Subset::range(1, 6);
        let p2 = Subset::range(4, 9);
        let rows = vec![p1, p2, p1.symmetric_difference(p2), s(&[1, 2, 3, 4, 5, 11])];
        let fam = SubsetFamily::new(6, rows).unwrap();
        let new_row = Subset::range(6, 11);
        let sum = fam.total_symmetric_difference().symmetric_difference(new_row);
        assert_eq!(sum, Subset::range(1, 10));
        assert_eq!(5 + sum.len(), 15);
        assert!(!weight_window_check(&fam, new_row));
    }

    #[test]
    fn parity_obstruction_cases() {
        assert!(parity_obstruction(4));
        assert!(parity_obstruction(12));
        assert!(parity_obstruction(20));
        for n in [1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 16] {
            assert!(!parity_obstruction(n), "N={n}");
        }
    }

    #[test]
    fn smallest_generator() {
        let fam = SubsetFamily::new(1, vec![s(&[1]), s(&[1])]).unwrap();
        let code = assemble_generator(&fam).unwrap();
        assert_eq!(code.generator(), [vec![1, 0, 1], vec![0, 1, 1]]);
        let partial = SubsetFamily::new(1, vec![s(&[1])]).unwrap();
        assert!(matches!(assemble_generator(&partial), Err(SearchError::IncompleteFamily { rows: 1, needed: 2 })));
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(SubsetFamily::new(3, vec![s(&[1, 2])]).is_err());
        assert!(SubsetFamily::new(3, vec![s(&[1, 2, 6])]).is_err());
        assert!(SubsetFamily::new(0, vec![]).is_err());
        assert!(SubsetFamily::new(1, vec![s(&[1]); 3]).is_err());
    }
}
