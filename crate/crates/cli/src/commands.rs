use std::fs;
use std::path::Path;

use mincodes::bounds::{
    bound_gap_table_with_tolerance, curve_dump, epsilon_proof_with_tolerance, liminf_table_with_tolerance, BoundsError,
    OutputFormat, Table,
};
use mincodes::codes::{ashikhmin_barg_check, minimal_iff_strong_blocking_audit, parse_matrix, GfError};
use mincodes::shortsearch::{search, verify_certificate, SearchCertificate, SearchConfig, SearchError};
use mincodes::FieldOrder;
use serde_json::{json, Value};

use crate::args::{BoundsCommand, SearchArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Internal = 1,
    Input = 2,
    Negative = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Input(_) => Exit::Input,
            CliError::Internal(_) => Exit::Internal,
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::NoCrossing(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::OracleDisagreement { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Code(g) => g.into(),
            SearchError::InvalidN(_)
            | SearchError::Unsupported { .. }
            | SearchError::InvalidConfig(_)
            | SearchError::InvalidFamily(_)
            | SearchError::Malformed(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Rendered output of one command.
#[derive(Debug)]
pub struct Report {
    pub body: String,
    /// File name used when only an output directory is given.
    pub default_name: String,
    pub exit: Exit,
}

fn ext(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn field_orders(qs: &[u64]) -> Result<Vec<FieldOrder>, CliError> {
    qs.iter().map(|&q| FieldOrder::new(q).map_err(|e| CliError::Input(e.to_string()))).collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn run_bounds(cmd: &BoundsCommand, format: Option<OutputFormat>) -> Result<Report, CliError> {
    let format = format.unwrap_or(OutputFormat::Csv);
    let (body, stem) = match cmd {
        BoundsCommand::Table { q_list, tolerance } => {
            let qs = field_orders(q_list)?;
            let liminf = Table::liminf(&liminf_table_with_tolerance(&qs, *tolerance)?);
            let gap = Table::gap(&bound_gap_table_with_tolerance(&qs, *tolerance)?);
            let body = match format {
                OutputFormat::Csv => format!("{}\n{}", liminf.to_csv(), gap.to_csv()),
                OutputFormat::Json => pretty(&json!({ "liminf": liminf.to_json(), "epsilon_gap": gap.to_json() })),
            };
            (body, "table".to_string())
        }
        BoundsCommand::Epsilon { q, tolerance } => {
            let sols = field_orders(q)?
                .into_iter()
                .map(|q| epsilon_proof_with_tolerance(q, *tolerance))
                .collect::<Result<Vec<_>, _>>()?;
            (Table::epsilon(&sols).render(format), "epsilon".to_string())
        }
        BoundsCommand::Curves { q, grid } => {
            let fq = FieldOrder::new(*q).map_err(|e| CliError::Input(e.to_string()))?;
            (Table::curves(&curve_dump(fq, *grid)?).render(format), format!("curves_q{q}"))
        }
    };
    Ok(Report { body, default_name: format!("{stem}.{}", ext(format)), exit: Exit::Success })
}

fn certificate_summary(cert: &SearchCertificate) -> String {
    let p = cert.pruned_by;
    format!(
        "N,outcome,nodes,pairwise,structure,weight,parity,elapsed_s\n{},{},{},{},{},{},{},{:.6}\n",
        cert.n,
        if cert.is_found() { "found" } else { "exhausted" },
        cert.nodes,
        p.pairwise,
        p.structure,
        p.weight,
        p.parity,
        cert.elapsed_s
    )
}

/// Runs the search; also returns the certificate so a found matrix can be
/// written separately.
pub fn run_search(args: &SearchArgs, format: Option<OutputFormat>) -> Result<(Report, SearchCertificate), CliError> {
    let config = SearchConfig {
        max_n: args.max_n,
        threads: args.threads,
        parity_shortcut: !args.no_parity_shortcut,
        orbit_pruning: !args.no_orbit_pruning,
    };
    let cert = search(args.n, &config)?;
    let format = format.unwrap_or(OutputFormat::Json);
    let body = match format {
        OutputFormat::Json => cert.to_json(),
        OutputFormat::Csv => certificate_summary(&cert),
    };
    let exit = if cert.is_found() { Exit::Success } else { Exit::Negative };
    Ok((Report { body, default_name: format!("search_N{}.{}", args.n, ext(format)), exit }, cert))
}

fn render_record(fields: &[(&str, Value)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty(&Value::Object(fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())),
        OutputFormat::Csv => {
            let mut out = String::from("field,value\n");
            for (k, v) in fields {
                let cell = match v {
                    Value::Null => String::new(),
                    Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k},{cell}\n"));
            }
            out
        }
    }
}

pub fn run_check(matrix: &Path, format: Option<OutputFormat>) -> Result<Report, CliError> {
    let code = parse_matrix(&read(matrix)?)?;
    let check = code.is_minimal()?;
    let profile = code.weight_profile()?;
    let (q, k, n) = (code.q().get() as usize, code.k(), code.n());
    let blocking = match minimal_iff_strong_blocking_audit(&code) {
        Ok(b) => Value::Bool(b),
        Err(GfError::DegenerateColumn(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let witness = |pick: fn(&(mincodes::codes::Codeword, mincodes::codes::Codeword)) -> String| {
        check.witness.as_ref().map_or(Value::Null, |w| Value::String(pick(w)))
    };
    let fields = [
        ("q", json!(q)),
        ("k", json!(k)),
        ("n", json!(n)),
        ("minimal", json!(check.minimal)),
        ("d_min", json!(profile.d_min)),
        ("w_max", json!(profile.w_max)),
        ("ashikhmin_barg", json!(ashikhmin_barg_check(&code)?)),
        ("distance_bound", json!(profile.d_min > (q - 1) * (k - 1))),
        ("weight_bound", json!(profile.w_max + k <= n + 1)),
        ("strong_blocking_set", blocking),
        ("witness_inner", witness(|w| w.0.to_string())),
        ("witness_outer", witness(|w| w.1.to_string())),
    ];
    let format = format.unwrap_or(OutputFormat::Csv);
    Ok(Report {
        body: render_record(&fields, format),
        default_name: format!("check.{}", ext(format)),
        exit: if check.minimal { Exit::Success } else { Exit::Negative },
    })
}

pub fn run_certify(path: &Path, format: Option<OutputFormat>) -> Result<Report, CliError> {
    let cert = SearchCertificate::from_json(&read(path)?)?;
    let (verified, reason) = match verify_certificate(&cert) {
        Ok(v) => (v, Value::Null),
        Err(SearchError::VerificationFailed(msg)) => (false, Value::String(msg)),
        Err(e) => return Err(e.into()),
    };
    let fields = [
        ("N", json!(cert.n)),
        ("outcome", json!(if cert.is_found() { "found" } else { "exhausted" })),
        ("nodes", json!(cert.nodes)),
        ("verified", json!(verified)),
        ("reason", reason),
    ];
    let format = format.unwrap_or(OutputFormat::Csv);
    Ok(Report {
        body: render_record(&fields, format),
        default_name: format!("certify.{}", ext(format)),
        exit: if verified { Exit::Success } else { Exit::Negative },
    })
}
