//! Tables with provenance metadata, their CSV and JSON renderings, and the
//! trace reports.
//!
//! CSV output starts with `# key: value` metadata lines, then a header row
//! and comma-separated data rows with LF endings. JSON output is an object
//! `{ "metadata": {...}, "columns": [...], "rows": [{...}, ...] }`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::money::Cents;
use crate::trace::{
    aggression_table, bidpack_cost, ccdf, duel_summary, group_traces, mean_active_fraction,
    parse_outcome_rows, profit_margin, read_trace_rows, terminal_alternation, AuctionOutcomeRecord,
    AuctionTrace, MetricError, OutcomeOptions, OutcomeParse, TraceError, TraceRow,
};
use crate::TOOL_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn num(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Num)
    }

    pub fn dollars(c: Cents) -> Cell {
        Cell::Text(c.to_string())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n', '\r']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) if x.is_finite() => Value::from(*x),
            Cell::Num(x) => Value::from(x.to_string()),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Provenance block written ahead of every table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub command: String,
    /// SHA-256 over the canonical parameter document.
    pub config_sha256: String,
    pub seed: Option<u64>,
    /// Ordered extra entries: full parameterisation and summary counts.
    pub entries: Vec<(String, String)>,
}

impl Metadata {
    pub fn new(command: &str, canonical_config: &str, seed: Option<u64>) -> Self {
        Metadata {
            tool: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config_sha256: sha256_hex(canonical_config.as_bytes()),
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(metadata: Metadata, columns: &[&str]) -> Self {
        Table {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let m = &self.metadata;
        let _ = writeln!(out, "# tool: {}", m.tool);
        let _ = writeln!(out, "# command: {}", m.command);
        let _ = writeln!(out, "# config_sha256: {}", m.config_sha256);
        if let Some(seed) = m.seed {
            let _ = writeln!(out, "# seed: {seed}");
        }
        for (k, v) in &m.entries {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let m = &self.metadata;
        let mut meta = Map::new();
        meta.insert("tool".into(), Value::from(m.tool.clone()));
        meta.insert("command".into(), Value::from(m.command.clone()));
        meta.insert("config_sha256".into(), Value::from(m.config_sha256.clone()));
        meta.insert("seed".into(), m.seed.map_or(Value::Null, Value::from));
        let entries: Map<String, Value> = m
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.clone())))
            .collect();
        meta.insert("entries".into(), Value::Object(entries));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(meta));
        doc.insert("columns".into(), Value::from(self.columns.clone()));
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json serialises");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn write_to<W: Write>(&self, format: Format, mut w: W) -> std::io::Result<()> {
        w.write_all(self.render(format).as_bytes())
    }
}

// ---------------------------------------------------------------------------
// Trace reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceReport {
    Margins,
    Aggression,
    Duels,
    Active,
    Bidpacks,
}

impl std::str::FromStr for TraceReport {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "margins" => TraceReport::Margins,
            "aggression" => TraceReport::Aggression,
            "duels" => TraceReport::Duels,
            "active" => TraceReport::Active,
            "bidpacks" => TraceReport::Bidpacks,
            _ => {
                return Err(format!(
                    "unknown report `{s}` (margins, aggression, duels, active, bidpacks)"
                ))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceOptions {
    /// Assumed bid fee for margins and aggression revenue.
    pub bid_fee: Cents,
    pub aggression_threshold: f64,
    pub duel_min_len: u64,
    pub duel_thresholds: Vec<u64>,
    pub active_window: f64,
    pub active_interval: f64,
    pub active_horizon: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            bid_fee: crate::trace::DEFAULT_BIDFEE,
            aggression_threshold: crate::trace::AGGRESSION_THRESHOLD,
            duel_min_len: crate::trace::DEFAULT_DUEL_MIN_LEN,
            duel_thresholds: vec![10, 20, 50],
            active_window: crate::trace::DEFAULT_ACTIVE_WINDOW,
            active_interval: crate::trace::DEFAULT_SAMPLE_INTERVAL,
            active_horizon: 3600.0,
        }
    }
}

/// Parsed inputs plus counts from loading them.
#[derive(Debug, Clone, Default)]
pub struct TraceInputs {
    pub records: Vec<AuctionOutcomeRecord>,
    pub traces: Vec<AuctionTrace>,
    pub skipped_rows: u64,
    /// Labels of the input files, for the metadata block.
    pub sources: Vec<String>,
    /// `path:line: message` for every skipped outcome row.
    pub diagnostics: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Trace {
        path: String,
        #[source]
        source: TraceError,
    },
}

/// Reads outcome and trace files, one file per worker. Malformed outcome
/// rows are skipped and listed in `diagnostics`; any malformed trace line is
/// an error.
pub fn load_trace_inputs(
    outcome_paths: &[PathBuf],
    trace_paths: &[PathBuf],
    options: OutcomeOptions,
) -> Result<TraceInputs, LoadError> {
    let io = |p: &Path| {
        let path = p.display().to_string();
        move |source| LoadError::Io { path, source }
    };
    let parsed: Vec<(String, OutcomeParse)> = outcome_paths
        .par_iter()
        .map(|p| {
            let file = File::open(p).map_err(io(p))?;
            Ok((
                p.display().to_string(),
                parse_outcome_rows(BufReader::new(file), options),
            ))
        })
        .collect::<Result<_, LoadError>>()?;
    let rows: Vec<Vec<TraceRow>> = trace_paths
        .par_iter()
        .map(|p| {
            let file = File::open(p).map_err(io(p))?;
            read_trace_rows(BufReader::new(file)).map_err(|source| LoadError::Trace {
                path: p.display().to_string(),
                source,
            })
        })
        .collect::<Result<_, LoadError>>()?;
    let mut inputs = TraceInputs::default();
    for (path, parse) in parsed {
        inputs.skipped_rows += parse.diagnostics.len() as u64;
        inputs
            .diagnostics
            .extend(parse.diagnostics.iter().map(|d| match d.field {
                Some(f) => format!("{path}:{}: {f}: {}", d.line, d.message),
                None => format!("{path}:{}: {}", d.line, d.message),
            }));
        inputs.records.extend(parse.records);
        inputs.sources.push(path);
    }
    let rows: Vec<TraceRow> = rows.into_iter().flatten().collect();
    inputs.traces = group_traces(&rows).map_err(|source| LoadError::Trace {
        path: trace_paths
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(" "),
        source,
    })?;
    inputs
        .sources
        .extend(trace_paths.iter().map(|p| p.display().to_string()));
    Ok(inputs)
}

impl TraceInputs {
    fn incomplete(&self) -> usize {
        self.traces.iter().filter(|t| t.missing > 0).count()
    }
}

pub fn run_trace_report(
    kind: TraceReport,
    inputs: &TraceInputs,
    options: &TraceOptions,
) -> Result<Table, MetricError> {
    let canonical =
        serde_json::to_string(&(kind, options, &inputs.sources)).expect("options serialise");
    let mut meta = Metadata::new("trace", &canonical, None);
    meta.push("report", format!("{kind:?}").to_lowercase());
    meta.push("sources", inputs.sources.join(" "));
    meta.push("outcome_records", inputs.records.len());
    meta.push("skipped_rows", inputs.skipped_rows);
    meta.push("traced_auctions", inputs.traces.len());
    meta.push("incomplete_auctions", inputs.incomplete());

    let table = match kind {
        TraceReport::Margins => {
            let m = profit_margin(&inputs.records, options.bid_fee)?;
            meta.push("bid_fee", options.bid_fee);
            meta.push("excluded_auctions", m.excluded.len());
            meta.push("total_profit", m.total_profit);
            meta.push("total_retail", m.total_retail);
            meta.push("aggregate_margin", m.aggregate_margin);
            let mut t = Table::new(
                meta,
                &["auction_id", "estimated_bids", "profit", "retail", "margin"],
            );
            for a in &m.auctions {
                t.rows.push(vec![
                    Cell::Int(a.auction_id as i64),
                    Cell::Int(a.estimated_bids as i64),
                    Cell::dollars(a.profit),
                    Cell::dollars(a.retail),
                    Cell::Num(a.margin),
                ]);
            }
            t
        }
        TraceReport::Aggression => {
            let table = aggression_table(
                &inputs.records,
                &inputs.traces,
                options.aggression_threshold,
                options.bid_fee,
            );
            meta.push("threshold", table.threshold);
            meta.push("skipped_incomplete", table.skipped_incomplete);
            meta.push("skipped_not_click_only", table.skipped_filtered);
            meta.push("skipped_untraced", table.skipped_untraced);
            for b in &table.buckets {
                let label = if b.aggressive_bidders >= 2 {
                    "2plus".to_string()
                } else {
                    b.aggressive_bidders.to_string()
                };
                meta.push(format!("auctions_{label}"), b.auctions);
                meta.push(format!("revenue_ratio_{label}"), b.revenue_ratio);
            }
            let values = aggression_values(inputs, options);
            meta.push("bidders", values.len());
            let mut t = Table::new(meta, &["aggression", "ccdf"]);
            for (x, p) in ccdf(&values) {
                t.rows.push(vec![Cell::Num(x), Cell::Num(p)]);
            }
            t
        }
        TraceReport::Duels => {
            let s = duel_summary(&inputs.traces, &options.duel_thresholds);
            meta.push("min_len", options.duel_min_len);
            meta.push("complete_auctions", s.auctions);
            meta.push("skipped_incomplete", s.skipped_incomplete);
            meta.push("longest", s.longest);
            for (k, f) in &s.at_least {
                meta.push(format!("fraction_at_least_{k}"), f);
            }
            let by_id: BTreeMap<Option<u64>, &AuctionTrace> =
                inputs.traces.iter().map(|t| (t.auction_id, t)).collect();
            let mut t = Table::new(
                meta,
                &["auction_id", "duel_length", "bidder_last", "bidder_other"],
            );
            for (id, len) in &s.lengths {
                let duel = (*len >= options.duel_min_len)
                    .then(|| by_id.get(id).and_then(|tr| terminal_alternation(&tr.bids)))
                    .flatten();
                let (x, y) = duel.map_or((Cell::Empty, Cell::Empty), |d| {
                    (
                        Cell::Text(d.participants.0.to_string()),
                        Cell::Text(d.participants.1.to_string()),
                    )
                });
                t.rows.push(vec![
                    id.map_or(Cell::Empty, |i| Cell::Int(i as i64)),
                    Cell::Int(*len as i64),
                    x,
                    y,
                ]);
            }
            t
        }
        TraceReport::Active => {
            meta.push("window_seconds", options.active_window);
            meta.push("interval_seconds", options.active_interval);
            let mut t = Table::new(meta, &["seconds_before_end", "mean_fraction", "auctions"]);
            let steps = (options.active_horizon / options.active_interval).floor() as u64;
            for k in (0..=steps).rev() {
                let before = k as f64 * options.active_interval;
                let (mean, n) = mean_active_fraction(&inputs.traces, before, options.active_window)
                    .ok_or(MetricError::EmptyBidStream)?;
                t.rows.push(vec![
                    Cell::Num(before),
                    Cell::Num(mean),
                    Cell::Int(n as i64),
                ]);
            }
            t
        }
        TraceReport::Bidpacks => {
            let c = bidpack_cost(&inputs.records, &inputs.traces)?;
            let mut t = Table::new(
                meta,
                &[
                    "packs_won",
                    "won_retail",
                    "winning_spend",
                    "losing_spend",
                    "cost_fraction",
                    "cost_fraction_with_losses",
                ],
            );
            t.rows.push(vec![
                Cell::Int(c.packs_won as i64),
                Cell::dollars(c.won_retail),
                Cell::dollars(c.winning_spend),
                Cell::dollars(c.losing_spend),
                Cell::Num(c.cost_fraction),
                Cell::Num(c.cost_fraction_with_losses),
            ]);
            t
        }
    };
    Ok(table)
}

/// Aggression of every bidder in complete click-only auctions.
fn aggression_values(inputs: &TraceInputs, options: &TraceOptions) -> Vec<f64> {
    let by_id: BTreeMap<u64, &AuctionTrace> = inputs
        .traces
        .iter()
        .filter_map(|t| t.auction_id.map(|id| (id, t)))
        .collect();
    let mut out = Vec::new();
    for r in inputs.records.iter().filter(|r| r.flg_click_only) {
        let Some(t) = by_id.get(&r.auction_id).filter(|t| t.missing == 0) else {
            continue;
        };
        let winner = (!r.winner.0.is_empty()).then_some(&r.winner);
        if let Ok(stats) =
            crate::trace::bidder_stats(&t.bids, r.retail, r.finalprice, winner, options.bid_fee)
        {
            out.extend(
                stats
                    .iter()
                    .filter(|s| !s.undefined_response)
                    .map(|s| s.aggression),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut meta = Metadata::new("sweep", "scenario = \"x\"", Some(7));
        meta.push("param", "k");
        let mut t = Table::new(meta, &["k", "revenue", "note"]);
        t.rows.push(vec![
            Cell::Int(1),
            Cell::Num(110.5),
            Cell::Text("a,b".into()),
        ]);
        t.rows
            .push(vec![Cell::Int(2), Cell::Empty, Cell::Text("c".into())]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = table().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# tool: paybid "));
        assert!(lines.contains(&"# seed: 7"));
        assert!(lines
            .iter()
            .any(|l| l.starts_with("# config_sha256: ") && l.len() == 17 + 64));
        assert_eq!(lines[lines.len() - 3], "k,revenue,note");
        assert_eq!(lines[lines.len() - 2], "1,110.5,\"a,b\"");
        assert_eq!(lines[lines.len() - 1], "2,,c");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&table().to_json()).unwrap();
        assert_eq!(v["metadata"]["seed"], 7);
        assert_eq!(v["rows"][0]["revenue"], 110.5);
        assert!(v["rows"][1]["revenue"].is_null());
    }

    #[test]
    fn hash_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
