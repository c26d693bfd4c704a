//! Plain-text generator matrices.
//!
//! ```text
//! # comment
//! q k n
//! <n digits in 0..q, optionally space separated>   (k lines)
//! ```

use super::{GfError, LinearCode, Result};
use crate::field::FieldOrder;

pub fn parse_matrix(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let err = |line: usize, msg: &str| GfError::Parse { line, msg: msg.to_string() };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [q, k, n] = fields[..] else {
        return Err(err(hline, "header must be `q k n`"));
    };
    let parse = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(hline, &format!("bad {what}: {s:?}")));
    let (q, k, n) = (parse(q, "q")?, parse(k, "k")?, parse(n, "n")?);
    let q = FieldOrder::new(q as u64).map_err(|e| err(hline, &e.to_string()))?;

    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (lno, line) = lines.next().ok_or_else(|| err(hline, &format!("expected {k} rows")))?;
        let row = line
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| u64::from(d) < q.get())
                    .map(|d| d as u8)
                    .ok_or_else(|| err(lno, &format!("invalid symbol {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if row.len() != n {
            return Err(err(lno, &format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, "trailing content after matrix rows"));
    }
    LinearCode::new(q, rows)
}

pub fn write_matrix(code: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", code.q(), code.k(), code.n());
    for row in code.generator() {
        out.extend(row.iter().map(|&x| char::from(b'0' + x)));
        out.push('\n');
    }
    out
}
