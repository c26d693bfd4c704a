//! Columns of a generator matrix as points of `PG(k−1, q)`.

use std::collections::BTreeMap;

use super::gf::PrimeField;
use super::{check_guard, GfError, LinearCode, Result, CODEWORD_GUARD};
use crate::field::FieldOrder;

/// Multiset of projective points, each stored with its first nonzero
/// coordinate scaled to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePointSet {
    k: usize,
    points: BTreeMap<Vec<u8>, usize>,
}

impl ProjectivePointSet {
    /// Builds the point multiset from vectors of length `k`. Zero vectors are
    /// rejected with [`GfError::DegenerateColumn`] carrying their index.
    pub fn from_vectors(q: FieldOrder, k: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let mut points = BTreeMap::new();
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != k || v.iter().any(|&x| x >= field.order()) {
                return Err(GfError::InvalidMatrix(format!("point {j} is not a vector of GF({q})^{k}")));
            }
            let mut p = v.clone();
            if !field.normalize(&mut p) {
                return Err(GfError::DegenerateColumn(j));
            }
            *points.entry(p).or_insert(0) += 1;
        }
        Ok(ProjectivePointSet { k, points })
    }

    /// One point per column of the generator.
    pub fn from_code(code: &LinearCode) -> Result<Self> {
        let columns: Vec<Vec<u8>> = (0..code.n()).map(|j| code.column(j)).collect();
        Self::from_vectors(code.q(), code.k(), &columns)
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Distinct points with their multiplicities.
    pub fn points(&self) -> impl Iterator<Item = (&[u8], usize)> {
        self.points.iter().map(|(p, &m)| (p.as_slice(), m))
    }

    pub fn multiplicity(&self, point: &[u8]) -> usize {
        self.points.get(point).copied().unwrap_or(0)
    }

    pub fn distinct_len(&self) -> usize {
        self.points.len()
    }

    pub fn len(&self) -> usize {
        self.points.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_projective(&self) -> bool {
        self.points.values().all(|&m| m == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingCheck {
    pub strong: bool,
    /// Normalized dual vector of the first hyperplane whose intersection fails to span it.
    pub witness: Option<Vec<u8>>,
}

/// Checks that every hyperplane of `PG(k−1, q)` meets the points in a set of
/// rank `k − 1`.
///
/// Hyperplanes are visited as normalized nonzero dual vectors in
/// lexicographic order.
pub fn is_strong_blocking_set(pts: &ProjectivePointSet, k: usize, q: FieldOrder) -> Result<BlockingCheck> {
    let field = PrimeField::new(q)?;
    if pts.dimension() != k {
        return Err(GfError::InvalidMatrix(format!("points live in dimension {}, expected {k}", pts.dimension())));
    }
    check_guard(q, k, CODEWORD_GUARD)?;
    let points: Vec<&[u8]> = pts.points().map(|(p, _)| p).collect();
    let order: Vec<usize> = (0..k).collect();
    let mut dual = vec![0u8; k];
    while next_normalized(&mut dual, field) {
        let mut on_plane: Vec<Vec<u8>> =
            points.iter().filter(|p| field.dot(&dual, p) == 0).map(|p| p.to_vec()).collect();
        let rank = field.rref(&mut on_plane, &order).len();
        if rank != k - 1 {
            return Ok(BlockingCheck { strong: false, witness: Some(dual) });
        }
    }
    Ok(BlockingCheck { strong: true, witness: None })
}

/// Advances to the next vector (lexicographic, base q) whose first nonzero
/// entry is 1.
fn next_normalized(v: &mut [u8], field: PrimeField) -> bool {
    let q = field.order();
    loop {
        let mut carried = true;
        for d in v.iter_mut().rev() {
            *d += 1;
            if *d < q {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            return false;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            return true;
        }
    }
}

/// Runs the codeword-based minimality check and the strong blocking set
/// check on the same code and returns their common verdict.
///
/// The two are equivalent for nondegenerate codes, so a disagreement means a
/// bug and is returned as [`GfError::OracleDisagreement`].
pub fn minimal_iff_strong_blocking_audit(code: &LinearCode) -> Result<bool> {
    let pts = ProjectivePointSet::from_code(code)?;
    let minimal = code.is_minimal()?.minimal;
    let blocking = is_strong_blocking_set(&pts, code.k(), code.q())?.strong;
    if minimal != blocking {
        return Err(GfError::OracleDisagreement { minimal, blocking });
    }
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano_points() -> Vec<Vec<u8>> {
        (1u8..8).map(|x| vec![(x >> 2) & 1, (x >> 1) & 1, x & 1]).collect()
    }

    #[test]
    fn columns_become_points() {
        let code = LinearCode::from_binary_rows(&["101", "011"]).unwrap();
        let pts = ProjectivePointSet::from_code(&code).unwrap();
        let got: Vec<(Vec<u8>, usize)> = pts.points().map(|(p, m)| (p.to_vec(), m)).collect();
        assert_eq!(got, [(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]);
        assert!(pts.is_projective());
    }

    #[test]
    fn repeated_column_has_multiplicity_two() {
        let code = LinearCode::from_binary_rows(&["1101", "0111"]).unwrap();
        let pts = ProjectivePointSet::from_code(&code).unwrap();
        assert_eq!(pts.multiplicity(&[1, 1]), 2);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts.distinct_len(), 3);
        assert!(!pts.is_projective());
    }

    #[test]
    fn ternary_points_are_normalized() {
        let pts = ProjectivePointSet::from_vectors(FieldOrder::TERNARY, 2, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(pts.multiplicity(&[1, 2]), 2);
    }

    #[test]
    fn zero_column_is_degenerate() {
        let code = LinearCode::from_binary_rows(&["100", "010"]).unwrap();
        assert_eq!(ProjectivePointSet::from_code(&code), Err(GfError::DegenerateColumn(2)));
    }

    #[test]
    fn simplex_columns_fill_the_plane() {
        let code = LinearCode::from_binary_rows(&["1010101", "0110011", "0001111"]).unwrap();
        let pts = ProjectivePointSet::from_code(&code).unwrap();
        assert_eq!(pts.distinct_len(), 7);
        for p in fano_points() {
            assert_eq!(pts.multiplicity(&p), 1);
        }
    }

    #[test]
    fn whole_plane_blocks_strongly() {
        let pts = ProjectivePointSet::from_vectors(FieldOrder::BINARY, 3, &fano_points()).unwrap();
        assert!(is_strong_blocking_set(&pts, 3, FieldOrder::BINARY).unwrap().strong);
    }

    #[test]
    fn plane_minus_a_point_blocks_strongly() {
        let mut all = fano_points();
        all.retain(|p| p != &[1, 1, 1]);
        let pts = ProjectivePointSet::from_vectors(FieldOrder::BINARY, 3, &all).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(is_strong_blocking_set(&pts, 3, FieldOrder::BINARY).unwrap().strong);
    }

    #[test]
    fn single_line_does_not_block() {
        // the line x3 = 0
        let line = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]];
        let pts = ProjectivePointSet::from_vectors(FieldOrder::BINARY, 3, &line).unwrap();
        let check = is_strong_blocking_set(&pts, 3, FieldOrder::BINARY).unwrap();
        assert!(!check.strong);
        // x3 = 0 passes (it is the line); x2 = 0 meets it in one point
        assert_eq!(check.witness.as_deref(), Some(&[0, 1, 0][..]));
        let dual = check.witness.unwrap();
        let on: Vec<_> = line.iter().filter(|p| p.iter().zip(&dual).map(|(a, b)| a * b).sum::<u8>() % 2 == 0).collect();
        assert!(on.len() < 2);
    }

    #[test]
    fn audit_agrees_on_small_cases() {
        let six = LinearCode::from_binary_rows(&["100110", "010101", "001011"]).unwrap();
        assert!(minimal_iff_strong_blocking_audit(&six).unwrap());
        let bad = LinearCode::from_binary_rows(&["111", "010"]).unwrap();
        assert!(!minimal_iff_strong_blocking_audit(&bad).unwrap());
    }

    #[test]
    fn ternary_line_audit() {
        let line = LinearCode::new(FieldOrder::TERNARY, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert!(minimal_iff_strong_blocking_audit(&line).unwrap());
        let partial = LinearCode::new(FieldOrder::TERNARY, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(!minimal_iff_strong_blocking_audit(&partial).unwrap());
    }
}
