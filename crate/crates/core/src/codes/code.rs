use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::gf::PrimeField;
use super::{check_guard, GfError, Result, CODEWORD_GUARD, MINIMALITY_GUARD};
use crate::field::FieldOrder;

/// A linear `[n, k]_q` code given by a full-rank generator matrix.
#[derive(Clone)]
pub struct LinearCode {
    q: FieldOrder,
    field: PrimeField,
    gen: Vec<Vec<u8>>,
    n: usize,
    profile: OnceLock<WeightProfile>,
}

impl LinearCode {
    /// Builds a code from the rows of its generator matrix.
    ///
    /// Rows must share one length `n ≥ k ≥ 1`, hold symbols below `q`, and be
    /// linearly independent.
    pub fn new(q: FieldOrder, gen: Vec<Vec<u8>>) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let k = gen.len();
        if k == 0 {
            return Err(GfError::InvalidMatrix("no rows".into()));
        }
        let n = gen[0].len();
        if gen.iter().any(|r| r.len() != n) {
            return Err(GfError::InvalidMatrix("rows differ in length".into()));
        }
        if n < k {
            return Err(GfError::InvalidMatrix(format!("length {n} is smaller than dimension {k}")));
        }
        if let Some(bad) = gen.iter().flatten().find(|&&x| x >= field.order()) {
            return Err(GfError::InvalidMatrix(format!("symbol {bad} is not in GF({q})")));
        }
        let rank = super::gf::rank(q, &gen)?;
        if rank != k {
            return Err(GfError::RankDeficient { rank, k });
        }
        Ok(LinearCode { q, field, gen, n, profile: OnceLock::new() })
    }

    /// Binary code from rows written as `0`/`1` strings.
    pub fn from_binary_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let gen = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(GfError::InvalidMatrix(format!("unexpected symbol {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LinearCode::new(FieldOrder::BINARY, gen)
    }

    pub fn q(&self) -> FieldOrder {
        self.q
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.gen
    }

    pub(crate) fn field(&self) -> PrimeField {
        self.field
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.gen.iter().map(|r| r[j]).collect()
    }

    /// Minimum distance, computed on first use.
    pub fn min_distance(&self) -> Result<usize> {
        Ok(self.weight_profile()?.d_min)
    }

    /// Encodes a message vector of length `k`.
    pub fn encode(&self, message: &[u8]) -> Codeword {
        let mut coords = vec![0u8; self.n];
        for (row, &m) in self.gen.iter().zip(message) {
            self.field.axpy(&mut coords, m, row);
        }
        Codeword::new(coords)
    }

    /// Streams the `q^k − 1` nonzero codewords, in lexicographic order of
    /// their message vectors.
    pub fn codewords(&self) -> Result<CodewordIter<'_>> {
        let total = check_guard(self.q, self.k(), CODEWORD_GUARD)?;
        Ok(CodewordIter { code: self, message: vec![0; self.k()], remaining: total - 1 })
    }

    pub fn weight_profile(&self) -> Result<WeightProfile> {
        if let Some(p) = self.profile.get() {
            return Ok(p.clone());
        }
        let mut distribution = BTreeMap::new();
        for c in self.codewords()? {
            *distribution.entry(c.weight()).or_insert(0usize) += 1;
        }
        let d_min = *distribution.keys().next().expect("k ≥ 1");
        let w_max = *distribution.keys().next_back().expect("k ≥ 1");
        let profile = WeightProfile { d_min, w_max, distribution };
        Ok(self.profile.get_or_init(|| profile).clone())
    }

    /// Checks that no nonzero codeword has a support strictly inside another's.
    ///
    /// Codewords are sorted by weight and each is compared only with strictly
    /// lighter ones. The reported witness is the first violation in that
    /// order, independent of the thread count.
    pub fn is_minimal(&self) -> Result<MinimalityCheck> {
        check_guard(self.q, self.k(), MINIMALITY_GUARD)?;
        let mut words: Vec<(usize, Support, Vec<u8>)> = Vec::new();
        let mut message = vec![0u8; self.k()];
        let field = self.field;
        while increment(&mut message, field.order()) {
            let c = self.encode(&message);
            words.push((c.weight(), c.support_mask(), message.clone()));
        }
        words.sort_by_key(|w| w.0);
        // lighter[i] = number of codewords strictly lighter than words[i]
        let mut lighter = vec![0usize; words.len()];
        for i in 1..words.len() {
            lighter[i] = if words[i].0 == words[i - 1].0 { lighter[i - 1] } else { i };
        }
        let witness = (0..words.len()).into_par_iter().find_map_first(|i| {
            let (_, ref sup, _) = words[i];
            words[..lighter[i]]
                .iter()
                .find(|(_, s, _)| s.is_subset_of(sup))
                .map(|(_, _, small)| (small.clone(), words[i].2.clone()))
        });
        Ok(match witness {
            None => MinimalityCheck { minimal: true, witness: None },
            Some((small, big)) => {
                MinimalityCheck { minimal: false, witness: Some((self.encode(&small), self.encode(&big))) }
            }
        })
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("q", &self.q.get())
            .field("n", &self.n)
            .field("k", &self.k())
            .field("gen", &self.gen)
            .finish()
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

/// Base-`q` counter, most significant digit first. Returns false on wraparound.
fn increment(digits: &mut [u8], q: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

pub struct CodewordIter<'a> {
    code: &'a LinearCode,
    message: Vec<u8>,
    remaining: u64,
}

impl Iterator for CodewordIter<'_> {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        increment(&mut self.message, self.code.field.order());
        Some(self.code.encode(&self.message))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for CodewordIter<'_> {}

/// Coordinate indices where a word is nonzero, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    words: Vec<u64>,
}

impl Support {
    pub fn from_coords(coords: &[u8]) -> Self {
        let mut words = vec![0u64; coords.len().div_ceil(64)];
        for (i, _) in coords.iter().enumerate().filter(|(_, &x)| x != 0) {
            words[i / 64] |= 1 << (i % 64);
        }
        Support { words }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset_of(&self, other: &Support) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &bits) in self.words.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                out.push(w * 64 + b.trailing_zeros() as usize);
                b &= b - 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    coords: Vec<u8>,
    weight: usize,
}

impl Codeword {
    pub fn new(coords: Vec<u8>) -> Self {
        let weight = coords.iter().filter(|&&x| x != 0).count();
        Codeword { coords, weight }
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Zero-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
    }

    pub fn support_mask(&self) -> Support {
        Support::from_coords(&self.coords)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.coords {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub d_min: usize,
    pub w_max: usize,
    /// weight → number of codewords of that weight
    pub distribution: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCheck {
    pub minimal: bool,
    /// `(c′, c)` with `σ(c′) ⊊ σ(c)` when the code is not minimal.
    pub witness: Option<(Codeword, Codeword)>,
}

/// Sufficient condition for minimality: `d_min / w_max > (q − 1) / q`.
pub fn ashikhmin_barg_check(code: &LinearCode) -> Result<bool> {
    let p = code.weight_profile()?;
    let q = code.q().get() as usize;
    Ok(p.d_min * q > p.w_max * (q - 1))
}
