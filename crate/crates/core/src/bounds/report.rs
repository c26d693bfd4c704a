//! CSV and JSON rendering of the bound tables.
//!
//! Real values are printed with six decimals in both formats.

use std::str::FromStr;

use serde_json::{Map, Value};

use super::epsilon::{EpsilonSolution, GapRow, LiminfRow};
use super::profile::{CurveSample, CURVE_COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Cell {
    Int(u64),
    Real(f64),
    Flag(bool),
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.6}"),
            Cell::Flag(b) => u8::from(b).to_string(),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(v) => Value::from(v),
            Cell::Real(v) => {
                let rounded: f64 = format!("{v:.6}").parse().unwrap_or(v);
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Flag(b) => Value::Bool(b),
        }
    }
}

/// A named table with fixed columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(name: &str, headers: &[&str]) -> Self {
        Table { name: name.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn liminf(rows: &[LiminfRow]) -> Self {
        let mut t = Table::new("liminf", &["q", "delta_star", "rate_star", "liminf_ratio"]);
        t.rows = rows
            .iter()
            .map(|r| {
                vec![Cell::Int(r.q), Cell::Real(r.delta_star), Cell::Real(r.rate_star), Cell::Real(r.liminf_ratio)]
            })
            .collect();
        t
    }

    pub fn gap(rows: &[GapRow]) -> Self {
        let mut t = Table::new("epsilon_gap", &["q", "liminf_ratio", "liminf_minus_q", "epsilon_proof"]);
        t.rows = rows
            .iter()
            .map(|r| vec![Cell::Int(r.q), Cell::Real(r.liminf_ratio), Cell::Real(r.gap), Cell::Real(r.epsilon)])
            .collect();
        t
    }

    pub fn epsilon(sols: &[EpsilonSolution]) -> Self {
        let mut t = Table::new("epsilon", &["q", "epsilon", "delta_c", "A", "C", "liminf_ratio"]);
        t.rows = sols
            .iter()
            .map(|s| {
                vec![
                    Cell::Int(s.q),
                    Cell::Real(s.epsilon),
                    Cell::Real(s.delta_c),
                    Cell::Real(s.a),
                    Cell::Real(s.c),
                    Cell::Real(s.liminf_ratio),
                ]
            })
            .collect();
        t
    }

    pub fn curves(samples: &[CurveSample]) -> Self {
        let mut headers = vec!["delta"];
        headers.extend(CURVE_COLUMNS);
        headers.push("crossing");
        let mut t = Table::new("curves", &headers);
        t.rows = samples
            .iter()
            .map(|s| {
                let mut row = vec![Cell::Real(s.delta)];
                row.extend(CURVE_COLUMNS.iter().map(|c| Cell::Real(s.values[*c])));
                row.push(Cell::Flag(s.crossing));
                row
            })
            .collect();
        t
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.headers.iter().cloned().zip(row.iter().map(|c| c.json())).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }
}
