use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{Outcome, SearchCertificate};
use super::family::{
    assemble_generator, pair_in_window, parity_obstruction, structure_check, AbcdSplit, Subset, SubsetFamily,
};
use super::{Result, SearchError};

/// Candidate lists are only materialized up to this `N`.
pub const CANDIDATE_GUARD_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest accepted `N` (capped at [`CANDIDATE_GUARD_N`]).
    pub max_n: usize,
    /// Worker threads for the fan-out over third rows. Results do not
    /// depend on this value.
    pub threads: usize,
    /// Answer `N ≡ 4 (mod 8)` by the parity count instead of searching.
    pub parity_shortcut: bool,
    /// Require each row from the third on to be the lexicographically least
    /// image of itself under column permutations fixing every earlier row.
    pub orbit_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_n: CANDIDATE_GUARD_N, threads: 1, parity_shortcut: true, orbit_pruning: true }
    }
}

/// Candidate rejections, each attributed to the first rule that failed.
/// `parity` is 1 when the parity count settled the instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub pairwise: u64,
    pub structure: u64,
    pub weight: u64,
    pub parity: u64,
}

impl std::ops::AddAssign for PruneCounts {
    fn add_assign(&mut self, o: Self) {
        self.pairwise += o.pairwise;
        self.structure += o.structure;
        self.weight += o.weight;
        self.parity += o.parity;
    }
}

/// Counters of one search. `nodes` counts rows placed in the tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_by: PruneCounts,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.pruned_by += o.pruned_by;
    }
}

/// Admissible `|P₁ ∩ P₂|`, ascending.
fn intersection_sizes(n: usize) -> Vec<usize> {
    if n.is_multiple_of(2) {
        vec![n / 2]
    } else {
        vec![(n - 1) / 2, n.div_ceil(2)]
    }
}

/// All `N`-subsets of `{1, …, 2N−1}` in lexicographic order.
fn candidates(n: usize) -> Vec<Subset> {
    let width = 2 * n - 1;
    let mut out = Vec::new();
    let mut v: u32 = (1 << n) - 1;
    while v < 1 << width {
        out.push(Subset(v));
        let t = v | (v - 1);
        v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
    }
    out.sort_unstable();
    out
}

struct Cancel<'a> {
    best: Option<&'a AtomicUsize>,
    index: usize,
}

impl Cancel<'_> {
    #[inline]
    fn hit(&self) -> bool {
        self.best.is_some_and(|b| b.load(Ordering::Relaxed) < self.index)
    }
}

#[derive(Clone)]
struct Dfs {
    n: usize,
    even: bool,
    /// Allowed `|Δ|` for a sum of `s` rows, by `s`, including the
    /// complementary codeword `c_H + c_T` when `s ≤ N`.
    lo: Vec<usize>,
    hi: Vec<usize>,
    rows: Vec<Subset>,
    /// `sums[m]` is the symmetric difference of the rows selected by `m`.
    sums: Vec<u32>,
    pairs: Vec<(Subset, Subset)>,
    pair_starts: Vec<usize>,
    /// Cells of the column partition cut out by the placed rows; the
    /// current cells are `cells[cell_starts.last()..]`.
    orbit: bool,
    cells: Vec<u32>,
    cell_starts: Vec<usize>,
    bufs: Vec<Vec<Subset>>,
    stats: SearchStats,
}

impl Dfs {
    fn new(n: usize, orbit: bool) -> Self {
        let mut lo = vec![0; n + 2];
        let mut hi = vec![0; n + 2];
        for s in 1..=n + 1 {
            lo[s] = (n + 1).saturating_sub(s);
            hi[s] = 2 * n - s;
            if s <= n {
                lo[s] = lo[s].max(s);
                hi[s] = hi[s].min(n - 1 + s);
            }
        }
        Dfs {
            n,
            even: n.is_multiple_of(2),
            lo,
            hi,
            rows: Vec::with_capacity(n + 1),
            sums: vec![0],
            pairs: Vec::new(),
            pair_starts: Vec::new(),
            orbit,
            cells: vec![(1 << (2 * n - 1)) - 1],
            cell_starts: vec![0],
            bufs: vec![Vec::new(); n + 2],
            stats: SearchStats::default(),
        }
    }

    fn place(&mut self, row: Subset) {
        self.pair_starts.push(self.pairs.len());
        if self.even {
            for &x in &self.rows {
                if 2 * x.intersection(row).len() == self.n {
                    self.pairs.push((x, row));
                }
            }
        }
        if self.orbit {
            let start = self.cells.len();
            for c in *self.cell_starts.last().expect("cells")..start {
                let cell = self.cells[c];
                for part in [cell & row.0, cell & !row.0] {
                    if part != 0 {
                        self.cells.push(part);
                    }
                }
            }
            self.cell_starts.push(start);
        }
        let half = self.sums.len();
        for m in 0..half {
            let v = self.sums[m] ^ row.0;
            self.sums.push(v);
        }
        self.rows.push(row);
        self.stats.nodes += 1;
    }

    fn unplace(&mut self) {
        self.rows.pop();
        let half = self.sums.len() / 2;
        self.sums.truncate(half);
        let start = self.pair_starts.pop().expect("placed row");
        self.pairs.truncate(start);
        if self.orbit {
            let start = self.cell_starts.pop().expect("placed row");
            self.cells.truncate(start);
        }
    }

    /// Whether `row` meets every cell in its highest-indexed columns, which
    /// makes it the least row of its orbit. Always true without orbit pruning
    /// and for the first two rows.
    #[inline]
    fn orbit_least(&self, row: Subset) -> bool {
        if !self.orbit || self.rows.len() < 2 {
            return true;
        }
        self.cells[*self.cell_starts.last().expect("cells")..].iter().all(|&cell| {
            let inside = cell & row.0;
            let outside = cell & !row.0;
            inside == 0 || outside == 0 || 31 - outside.leading_zeros() < inside.trailing_zeros()
        })
    }

    /// Keeps the candidates of `list` compatible with the newest row.
    fn filter(&mut self, list: &[Subset], out: &mut Vec<Subset>) {
        let r = *self.rows.last().expect("a row is placed");
        let half = self.sums.len() / 2;
        let fresh = &self.sums[half..];
        let new_pairs = &self.pairs[*self.pair_starts.last().expect("placed row")..];
        let p = &mut self.stats.pruned_by;
        'cand: for &i in list {
            if !pair_in_window(self.n, i, r) {
                p.pairwise += 1;
                continue;
            }
            for &(a, b) in new_pairs {
                if !structure_check(AbcdSplit::of(i, a, b)) {
                    p.structure += 1;
                    continue 'cand;
                }
            }
            for (m, &sum) in fresh.iter().enumerate() {
                let s = (m | half).count_ones() as usize + 1;
                let d = (sum ^ i.0).count_ones() as usize;
                if d < self.lo[s] || d > self.hi[s] {
                    p.weight += 1;
                    continue 'cand;
                }
            }
            out.push(i);
        }
    }

    /// Completes the family from `list`, whose entries all follow the last
    /// free row in lexicographic order.
    fn extend(&mut self, list: &[Subset], cancel: &Cancel) -> bool {
        let depth = self.rows.len();
        if depth == self.n {
            let last = Subset(*self.sums.last().expect("sums"));
            if list.binary_search(&last).is_ok() && self.orbit_least(last) {
                self.place(last);
                return true;
            }
            return false;
        }
        let need = self.n + 1 - depth;
        if need == 2 {
            return self.close_pair(list);
        }
        let mut child = std::mem::take(&mut self.bufs[depth]);
        for idx in 0..list.len() {
            if list.len() - idx < need || cancel.hit() {
                break;
            }
            if !self.orbit_least(list[idx]) {
                continue;
            }
            self.place(list[idx]);
            child.clear();
            self.filter(&list[idx + 1..], &mut child);
            if self.extend(&child, cancel) {
                self.bufs[depth] = child;
                return true;
            }
            self.unplace();
        }
        self.bufs[depth] = child;
        false
    }

    /// Last two rows: the final row is fixed by the even-column condition,
    /// so each `Y` is paired with `X = Δ ⊕ Y` and only `X` is filtered
    /// against `Y`. `Y` counts as a node only when `X` is a later entry of
    /// `list`.
    fn close_pair(&mut self, list: &[Subset]) -> bool {
        let total = *self.sums.last().expect("sums");
        let mut out = Vec::with_capacity(1);
        for (idx, &y) in list.iter().enumerate() {
            let x = Subset(total ^ y.0);
            if x <= y || list[idx + 1..].binary_search(&x).is_err() || !self.orbit_least(y) {
                continue;
            }
            self.place(y);
            out.clear();
            self.filter(&[x], &mut out);
            if !out.is_empty() && self.orbit_least(x) {
                self.place(x);
                return true;
            }
            self.unplace();
        }
        false
    }
}

struct Branch {
    stats: SearchStats,
    rows: Option<Vec<Subset>>,
}

fn run_branch(root: &Dfs, list: &[Subset], b: usize, cancel: &Cancel) -> Branch {
    if !root.orbit_least(list[b]) {
        return Branch { stats: SearchStats::default(), rows: None };
    }
    let mut dfs = root.clone();
    dfs.stats = SearchStats::default();
    dfs.place(list[b]);
    let mut child = Vec::new();
    dfs.filter(&list[b + 1..], &mut child);
    let found = dfs.extend(&child, cancel);
    Branch { stats: dfs.stats, rows: found.then(|| dfs.rows.clone()) }
}

/// Runs every third-row branch of one `t`, merging counters of branches up
/// to the first success so the totals match a sequential run.
fn fan_out(root: &Dfs, list: &[Subset], threads: usize) -> Result<Branch> {
    let need = root.n + 1 - root.rows.len();
    let count = (list.len() + 1).saturating_sub(need);
    let branches: Vec<Branch> = if threads == 1 {
        let mut out = Vec::new();
        let none = Cancel { best: None, index: 0 };
        for b in 0..count {
            let br = run_branch(root, list, b, &none);
            let done = br.rows.is_some();
            out.push(br);
            if done {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| SearchError::InvalidConfig(e.to_string()))?;
        let best = AtomicUsize::new(usize::MAX);
        pool.install(|| {
            (0..count)
                .into_par_iter()
                .map(|b| {
                    let cancel = Cancel { best: Some(&best), index: b };
                    if cancel.hit() {
                        return Branch { stats: SearchStats::default(), rows: None };
                    }
                    let br = run_branch(root, list, b, &cancel);
                    if br.rows.is_some() {
                        best.fetch_min(b, Ordering::Relaxed);
                    }
                    br
                })
                .collect()
        })
    };
    let mut merged = Branch { stats: SearchStats::default(), rows: None };
    for br in branches {
        merged.stats += br.stats;
        if br.rows.is_some() {
            merged.rows = br.rows;
            break;
        }
    }
    Ok(merged)
}

fn validate(n: usize, config: &SearchConfig) -> Result<()> {
    if n == 0 {
        return Err(SearchError::InvalidN(0));
    }
    let max = config.max_n.min(CANDIDATE_GUARD_N);
    if n > max {
        return Err(SearchError::Unsupported { n, max });
    }
    if config.threads == 0 {
        return Err(SearchError::InvalidConfig("threads must be at least 1".into()));
    }
    Ok(())
}

/// Searches for a canonical family and returns the lexicographically least
/// one, if any, with the search counters.
pub fn find_family(n: usize, config: &SearchConfig) -> Result<(Option<SubsetFamily>, SearchStats)> {
    validate(n, config)?;
    let mut stats = SearchStats::default();
    if n == 1 {
        stats.nodes = 2;
        let one = Subset::from_elements(&[1]);
        return Ok((Some(SubsetFamily::new(1, vec![one, one])?), stats));
    }
    if config.parity_shortcut && parity_obstruction(n) {
        stats.pruned_by.parity = 1;
        return Ok((None, stats));
    }
    let all = candidates(n);
    let p1 = Subset::range(1, n);
    for t in intersection_sizes(n) {
        let p2 = Subset::range(n - t + 1, 2 * n - t);
        let mut root = Dfs::new(n, config.orbit_pruning);
        root.place(p1);
        let mut list1 = Vec::new();
        root.filter(&all, &mut list1);
        if list1.binary_search(&p2).is_err() {
            stats += root.stats;
            continue;
        }
        root.place(p2);
        let mut list2 = Vec::new();
        root.filter(&list1, &mut list2);
        let found = if root.rows.len() == n {
            let none = Cancel { best: None, index: 0 };
            let ok = root.extend(&list2, &none);
            stats += root.stats;
            ok.then(|| root.rows.clone())
        } else {
            stats += root.stats;
            let br = fan_out(&root, &list2, config.threads)?;
            stats += br.stats;
            br.rows
        };
        if let Some(rows) = found {
            return Ok((Some(SubsetFamily::new(n, rows)?), stats));
        }
    }
    Ok((None, stats))
}

/// Prefix of the assumption recorded when orbit pruning is on.
pub(crate) const ORBIT_ASSUMPTION: &str = "orbit pruning:";

/// Symmetry reductions and structural facts an outcome for `N` relies on.
pub(crate) fn assumptions(n: usize, parity: bool, orbit: bool) -> Vec<String> {
    let mut out = vec![
        format!("standard form [I_{} | P]: every row of P has weight {n} and every column of P has even weight", n + 1),
        format!("all nonzero codeword weights lie in [{}, {}]", n + 1, 2 * n),
    ];
    if n == 1 {
        out.push("N = 1: the ground set {1} has a single 1-subset, so P1 = P2 = {1}".into());
        return out;
    }
    if parity {
        out.push(format!(
            "parity: N = {n} ≡ 4 (mod 8), so the N-1 rows after P1, P2 hold (N-1)·N/4 = {} ones in the N/2-1 columns outside P1 ∪ P2, an odd number",
            (n - 1) * (n / 4)
        ));
        return out;
    }
    let ts: Vec<String> = intersection_sizes(n).iter().map(|t| t.to_string()).collect();
    out.push(format!("column permutation of P fixes P1 = {{1..{n}}}"));
    out.push(format!(
        "block-wise column permutation fixes P2 = {{N-t+1..2N-t}} for t = |P1 ∩ P2| in {{{}}}",
        ts.join(", ")
    ));
    out.push("rows P3..P(N+1) strictly increase in lexicographic order of their indicator rows".into());
    if orbit {
        out.push(format!(
            "{ORBIT_ASSUMPTION} each row P_j, j >= 3, is the lexicographically least image of itself under the column permutations fixing P1, ..., P(j-1) setwise"
        ));
    }
    if n.is_multiple_of(2) {
        out.push(
            "for every pair of rows meeting in N/2 elements, every other row has a = c, b = d, |a - b| <= 1".into(),
        );
    }
    out
}

/// Runs the search for `N` and packages the result as a certificate.
pub fn search(n: usize, config: &SearchConfig) -> Result<SearchCertificate> {
    let start = Instant::now();
    let (family, stats) = find_family(n, config)?;
    let outcome = match &family {
        Some(fam) => Outcome::Found(assemble_generator(fam)?),
        None => Outcome::Exhausted,
    };
    Ok(SearchCertificate {
        n,
        outcome,
        nodes: stats.nodes,
        pruned_by: stats.pruned_by,
        assumptions: assumptions(n, stats.pruned_by.parity > 0, config.orbit_pruning),
        elapsed_s: start.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}
