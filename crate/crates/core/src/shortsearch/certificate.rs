use serde::{Deserialize, Serialize};

use super::engine::{find_family, PruneCounts, SearchConfig, ORBIT_ASSUMPTION};
use super::{Result, SearchError};
use crate::codes::{minimal_iff_strong_blocking_audit, write_matrix, LinearCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(LinearCode),
    Exhausted,
}

/// Outcome of a search together with the evidence needed to re-check it.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchCertificate {
    pub n: usize,
    pub outcome: Outcome,
    pub nodes: u64,
    pub pruned_by: PruneCounts,
    pub assumptions: Vec<String>,
    pub elapsed_s: f64,
    pub version: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(rename = "N")]
    n: usize,
    outcome: String,
    generator: Option<Vec<String>>,
    nodes: u64,
    pruned_by: PruneCounts,
    assumptions: Vec<String>,
    elapsed_s: f64,
    version: String,
}

impl SearchCertificate {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, Outcome::Found(_))
    }

    pub fn generator(&self) -> Option<&LinearCode> {
        match &self.outcome {
            Outcome::Found(code) => Some(code),
            Outcome::Exhausted => None,
        }
    }

    /// Generator in the matrix text format, if one was found.
    pub fn matrix_text(&self) -> Option<String> {
        self.generator().map(write_matrix)
    }

    pub fn to_json(&self) -> String {
        let generator = self.generator().map(|code| {
            code.generator().iter().map(|row| row.iter().map(|&x| char::from(b'0' + x)).collect()).collect()
        });
        let wire = Wire {
            n: self.n,
            outcome: if self.is_found() { "found" } else { "exhausted" }.into(),
            generator,
            nodes: self.nodes,
            pruned_by: self.pruned_by,
            assumptions: self.assumptions.clone(),
            elapsed_s: (self.elapsed_s * 1e6).round() / 1e6,
            version: self.version.clone(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| SearchError::Malformed(e.to_string()))?;
        let outcome = match (wire.outcome.as_str(), wire.generator) {
            ("found", Some(rows)) => Outcome::Found(LinearCode::from_binary_rows(&rows)?),
            ("exhausted", None) => Outcome::Exhausted,
            ("found", None) => return Err(SearchError::Malformed("found certificate without generator".into())),
            ("exhausted", Some(_)) => {
                return Err(SearchError::Malformed("exhausted certificate with a generator".into()))
            }
            (other, _) => return Err(SearchError::Malformed(format!("unknown outcome {other:?}"))),
        };
        Ok(SearchCertificate {
            n: wire.n,
            outcome,
            nodes: wire.nodes,
            pruned_by: wire.pruned_by,
            assumptions: wire.assumptions,
            elapsed_s: wire.elapsed_s,
            version: wire.version,
        })
    }
}

fn fail(msg: String) -> SearchError {
    SearchError::VerificationFailed(msg)
}

fn verify_found(n: usize, code: &LinearCode) -> Result<()> {
    if code.q().get() != 2 {
        return Err(fail(format!("field of order {} is not binary", code.q().get())));
    }
    if code.n() != 3 * n || code.k() != n + 1 {
        return Err(fail(format!("parameters [{}, {}], expected [{}, {}]", code.n(), code.k(), 3 * n, n + 1)));
    }
    let k = n + 1;
    let gen = code.generator();
    for (j, row) in gen.iter().enumerate() {
        if row[..k].iter().enumerate().any(|(i, &x)| x != u8::from(i == j)) {
            return Err(fail(format!("row {} does not start with the identity", j + 1)));
        }
        let w = row.iter().filter(|&&x| x != 0).count();
        if w != k {
            return Err(fail(format!("row {} has weight {w}, expected {k}", j + 1)));
        }
    }
    for c in k..code.n() {
        if gen.iter().map(|r| r[c] as usize).sum::<usize>() % 2 != 0 {
            return Err(fail(format!("column {} of P has odd weight", c - k + 1)));
        }
    }
    let check = code.is_minimal()?;
    if !check.minimal {
        return Err(fail("code is not minimal".into()));
    }
    let d = code.min_distance()?;
    if d != k {
        return Err(fail(format!("minimum distance {d}, expected {k}")));
    }
    if !minimal_iff_strong_blocking_audit(code)? {
        return Err(fail("columns do not form a strong blocking set".into()));
    }
    Ok(())
}

/// Re-checks a certificate.
///
/// A found generator must give a binary `[3N, N+1]` minimal code with
/// `d = N + 1` in standard form, whose columns form a strong blocking set.
/// An exhausted certificate is replayed and its outcome and counters
/// compared. The replay uses the parity shortcut only if the parity counter
/// is nonzero, and orbit pruning only if the assumptions list it.
pub fn verify_certificate(cert: &SearchCertificate) -> Result<bool> {
    match &cert.outcome {
        Outcome::Found(code) => verify_found(cert.n, code).map(|_| true),
        Outcome::Exhausted => {
            let config = SearchConfig {
                parity_shortcut: cert.pruned_by.parity > 0,
                orbit_pruning: cert.assumptions.iter().any(|a| a.starts_with(ORBIT_ASSUMPTION)),
                ..SearchConfig::default()
            };
            let (family, stats) = find_family(cert.n, &config)?;
            if family.is_some() {
                return Err(fail(format!("replay for N = {} found a family", cert.n)));
            }
            if stats.nodes != cert.nodes {
                return Err(fail(format!("replay visited {} nodes, certificate records {}", stats.nodes, cert.nodes)));
            }
            if stats.pruned_by != cert.pruned_by {
                return Err(fail(format!(
                    "replay pruning counts {:?} differ from recorded {:?}",
                    stats.pruned_by, cert.pruned_by
                )));
            }
            Ok(true)
        }
    }
}
