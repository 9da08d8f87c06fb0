//! Text, CSV and JSON renderings of [`BoundReport`]s.
//!
//! JSON schema (version [`SCHEMA_VERSION`]), one object per graph:
//!
//! ```text
//! schema_version  integer
//! graph_id        string
//! line            integer, batch input line (batch only)
//! n, e            integers
//! connected       boolean
//! aut_exact       decimal string, or null without the oracle
//! orbits          array of vertex arrays, or null
//! note            string or null
//! bounds          array of
//!   bound_id      string
//!   label         bound_id, with the corollary mode appended
//!   applicable    boolean
//!   exact_value   decimal string "p" or "p/q", null when irrational or inapplicable
//!   log2_value    number with 17 significant digits, null when inapplicable
//!   gap           log2_value - log2(aut_exact), null when either is missing
//!   reason        {code, message} or null
//!   context       object of the parameters the bound used
//! ```
//!
//! Analyze CSV columns: [`ANALYZE_CSV_HEADER`]. Batch CSV columns: `line`,
//! `graph6`, `n`, `e`, `connected`, `aut_exact`, then `<label>_exact` and
//! `<label>_log2` for every requested bound label in canonical order.

use std::fmt::Write as _;

use autbound_core::bounds::{BoundContext, Reason};
use autbound_core::{BoundId, BoundReport, BoundValue, CorollaryMode};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: u32 = 1;

pub const ANALYZE_CSV_HEADER: [&str; 11] = [
    "graph_id",
    "n",
    "e",
    "aut_exact",
    "label",
    "bound_id",
    "applicable",
    "exact_value",
    "log2_value",
    "gap",
    "reason",
];

/// `x` with 17 significant digits, enough to round-trip any `f64`.
pub fn f64_17(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw_f64(x: f64) -> Box<RawValue> {
    RawValue::from_string(f64_17(x)).expect("finite floats are JSON numbers")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonReason {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct JsonContext {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_root: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_asserted: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

impl From<&BoundContext> for JsonContext {
    fn from(c: &BoundContext) -> Self {
        JsonContext {
            tree_kind: c.tree_kind.map(|k| k.as_str().into()),
            tree_root: c.tree_root,
            tree_max_degree: c.tree_max_degree,
            tree_edges: c.tree_edges.clone(),
            v0: c.v0,
            sequence: c.sequence.clone(),
            n1: c.n1,
            p: c.p,
            m: c.m,
            r: c.r,
            alpha: c.alpha,
            exponent: c.exponent.map(|e| e.to_string()),
            mode: c.mode.map(|m| m.as_str().into()),
            class_asserted: c.class_asserted,
            method: c.method.map(Into::into),
        }
    }
}

#[derive(Debug, Serialize)]
struct JsonBoundOut {
    bound_id: &'static str,
    label: String,
    applicable: bool,
    exact_value: Option<String>,
    log2_value: Option<Box<RawValue>>,
    gap: Option<Box<RawValue>>,
    reason: Option<JsonReason>,
    context: JsonContext,
}

#[derive(Debug, Serialize)]
struct JsonReportOut {
    schema_version: u32,
    graph_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    n: usize,
    e: usize,
    connected: bool,
    aut_exact: Option<String>,
    orbits: Option<Vec<Vec<usize>>>,
    note: Option<String>,
    bounds: Vec<JsonBoundOut>,
}

/// The parsed form of a bound in the JSON output.
#[derive(Debug, Deserialize)]
pub struct JsonBound {
    pub bound_id: String,
    pub label: String,
    pub applicable: bool,
    pub exact_value: Option<String>,
    pub log2_value: Option<f64>,
    pub gap: Option<f64>,
    pub reason: Option<JsonReason>,
    pub context: JsonContext,
}

/// The parsed form of one JSON report.
#[derive(Debug, Deserialize)]
pub struct JsonReport {
    pub schema_version: u32,
    pub graph_id: String,
    pub line: Option<usize>,
    pub n: usize,
    pub e: usize,
    pub connected: bool,
    pub aut_exact: Option<String>,
    pub orbits: Option<Vec<Vec<usize>>>,
    pub note: Option<String>,
    pub bounds: Vec<JsonBound>,
}

fn reason_json(r: &Reason) -> JsonReason {
    JsonReason { code: r.code().into(), message: r.to_string() }
}

pub fn json(report: &BoundReport, line: Option<usize>) -> String {
    let bounds = report
        .bounds
        .iter()
        .zip(&report.gaps)
        .map(|(b, gap)| JsonBoundOut {
            bound_id: b.id.as_str(),
            label: b.label(),
            applicable: b.is_applicable(),
            exact_value: b.exact_value().map(ToString::to_string),
            log2_value: b.log2_value().map(raw_f64),
            gap: gap.map(raw_f64),
            reason: b.reason().map(reason_json),
            context: (&b.context).into(),
        })
        .collect();
    let out = JsonReportOut {
        schema_version: SCHEMA_VERSION,
        graph_id: report.graph_id.clone(),
        line,
        n: report.n,
        e: report.e,
        connected: report.connected,
        aut_exact: report.aut_exact().map(ToString::to_string),
        orbits: report.aut.as_ref().map(|a| a.orbits.clone()),
        note: report.note.clone(),
        bounds,
    };
    serde_json::to_string(&out).expect("report serializes")
}

/// Human-readable value: the exact value when known, otherwise an approximation.
fn display_value(b: &BoundValue) -> String {
    match (b.exact_value(), b.log2_value()) {
        (Some(x), _) if x.is_integer() || x.to_string().len() <= 24 => x.to_string(),
        (_, Some(l)) if l < 64.0 => format!("~{:.6}", l.exp2()),
        (_, Some(l)) => format!("~2^{l:.4}"),
        _ => "-".into(),
    }
}

fn context_summary(c: &BoundContext) -> String {
    let mut parts = Vec::new();
    if let Some(k) = c.tree_kind {
        parts.push(format!("tree={}@{}", k.as_str(), c.tree_root.unwrap_or(0)));
    }
    if let Some(v0) = c.v0 {
        parts.push(format!("v0={v0}"));
    }
    for (key, value) in [("n1", c.n1), ("p", c.p), ("m", c.m), ("r", c.r), ("alpha", c.alpha)] {
        if let Some(v) = value {
            parts.push(format!("{key}={v}"));
        }
    }
    if let Some(m) = c.method {
        parts.push(format!("method={m}"));
    }
    parts.join(" ")
}

pub fn table(report: &BoundReport) -> String {
    let mut out = String::new();
    let id = if report.graph_id.is_empty() { "input" } else { &report.graph_id };
    let _ = writeln!(
        out,
        "graph {id}: n = {}, e = {}, {}",
        report.n,
        report.e,
        if report.connected { "connected" } else { "disconnected" }
    );
    match &report.aut {
        Some(a) => {
            let _ = writeln!(out, "aut = {}", a.order);
            let orbits: Vec<String> = a
                .orbits
                .iter()
                .map(|o| format!("{{{}}}", o.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
                .collect();
            let _ = writeln!(out, "orbits: {}", orbits.join(" "));
        }
        None => out.push_str("aut = (not computed)\n"),
    }
    if let Some(note) = &report.note {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "{:<26} {:>24} {:>12} {:>10}  details", "bound", "value", "log2", "gap");
    for (b, gap) in report.bounds.iter().zip(&report.gaps) {
        let log2 = b.log2_value().map_or("-".into(), |l| format!("{l:.6}"));
        let gap = gap.map_or("-".into(), |g| format!("{g:.6}"));
        let details = match b.reason() {
            Some(r) => format!("inapplicable: {r}"),
            None => context_summary(&b.context),
        };
        let _ = writeln!(out, "{:<26} {:>24} {:>12} {:>10}  {}", b.label(), display_value(b), log2, gap, details);
    }
    out
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV is UTF-8")
}

pub fn analyze_csv(report: &BoundReport, with_header: bool) -> String {
    let mut w = csv_writer();
    if with_header {
        w.write_record(ANALYZE_CSV_HEADER).expect("in-memory writer");
    }
    let aut = report.aut_exact().map(ToString::to_string).unwrap_or_default();
    for (b, gap) in report.bounds.iter().zip(&report.gaps) {
        w.write_record([
            report.graph_id.clone(),
            report.n.to_string(),
            report.e.to_string(),
            aut.clone(),
            b.label(),
            b.id.as_str().into(),
            b.is_applicable().to_string(),
            b.exact_value().map(ToString::to_string).unwrap_or_default(),
            b.log2_value().map(f64_17).unwrap_or_default(),
            gap.map(f64_17).unwrap_or_default(),
            b.reason().map(|r| r.code().to_string()).unwrap_or_default(),
        ])
        .expect("in-memory writer");
    }
    csv_finish(w)
}

/// Bound labels a report will contain, in output order.
pub fn bound_labels(bounds: Option<&[BoundId]>, modes: &[CorollaryMode]) -> Vec<String> {
    let mut modes = modes.to_vec();
    modes.sort_unstable();
    modes.dedup();
    let mut out = Vec::new();
    for id in BoundId::ALL {
        if bounds.is_some_and(|b| !b.contains(&id)) {
            continue;
        }
        if id == BoundId::Corollary {
            out.extend(modes.iter().map(|m| format!("{id}_{}", m.as_str())));
        } else {
            out.push(id.as_str().into());
        }
    }
    out
}

pub fn batch_csv_header(labels: &[String]) -> String {
    let mut w = csv_writer();
    let mut cols: Vec<String> =
        ["line", "graph6", "n", "e", "connected", "aut_exact"].into_iter().map(Into::into).collect();
    for l in labels {
        cols.push(format!("{l}_exact"));
        cols.push(format!("{l}_log2"));
    }
    w.write_record(&cols).expect("in-memory writer");
    csv_finish(w)
}

pub fn batch_csv_row(line: usize, graph6: &str, report: &BoundReport, labels: &[String]) -> String {
    let mut w = csv_writer();
    let mut cols = vec![
        line.to_string(),
        graph6.into(),
        report.n.to_string(),
        report.e.to_string(),
        report.connected.to_string(),
        report.aut_exact().map(ToString::to_string).unwrap_or_default(),
    ];
    for l in labels {
        let b = report.bounds.iter().find(|b| &b.label() == l);
        cols.push(b.and_then(|b| b.exact_value()).map(ToString::to_string).unwrap_or_default());
        cols.push(b.and_then(|b| b.log2_value()).map(f64_17).unwrap_or_default());
    }
    w.write_record(&cols).expect("in-memory writer");
    csv_finish(w)
}
