//! Append-only JSON-lines result store and deterministic export.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const STORE_ENV: &str = "MARKOFF_LAB_STORE";
pub const DEFAULT_STORE: &str = "markoff_lab.jsonl";

/// Fields measuring wall time; dropped from exports unless requested.
pub const TIMING_FIELDS: &[&str] = &["seconds"];

/// Every record kind and its fields in output order.
pub const KINDS: &[(&str, &[&str])] = &[
    ("surface", &["p", "exclude_zero_coords", "count"]),
    ("components", &["p", "surface_count", "component_sizes", "exceptional_count", "seconds"]),
    ("exceptional_set", &["p", "count", "triples"]),
    ("min_order_product", &["p", "min_product", "ratio_to_log_p", "witness"]),
    ("intersection", &["p", "x1", "x2", "t1", "t2", "intersection", "lemma_ratio"]),
    ("bound", &["p", "t", "h", "m", "n", "g", "N_h", "bound", "ratio", "in_window"]),
    (
        "zeros",
        &[
            "p",
            "t",
            "h",
            "ambient",
            "polynomial",
            "m",
            "n",
            "g",
            "N_h",
            "per_member",
            "independent",
            "singular_locus",
            "singular_bound",
        ],
    ),
    (
        "certificate",
        &[
            "p",
            "seed",
            "case",
            "certified_lower_bound",
            "component_size",
            "ratio_to_log_power",
            "root_x",
            "root_t",
            "theta",
            "levels",
        ],
    ),
    ("divisor_profile", &["n", "gamma", "z", "tau_z", "z_power", "ratio", "s", "p_s", "psi_bound", "holds"]),
];

pub fn kind_fields(kind: &str) -> Result<&'static [&'static str]> {
    KINDS
        .iter()
        .find(|(k, _)| *k == kind)
        .map(|(_, f)| *f)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown record kind {kind:?}")))
}

/// `$MARKOFF_LAB_STORE`, else `markoff_lab.jsonl` in the working directory.
pub fn default_store_path() -> PathBuf {
    std::env::var_os(STORE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_STORE))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct ResultStore {
    path: PathBuf,
}

impl ResultStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultStore { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Append one record tagged with `kind`.
    pub fn append<T: Serialize>(&self, kind: &str, record: &T) -> Result<Value> {
        let line = to_record(kind, record)?;
        self.append_value(&line)?;
        Ok(line)
    }

    pub fn append_value(&self, record: &Value) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        f.write_all(line.as_bytes())?;
        Ok(())
    }

    /// All records in append order; a missing file is an empty store.
    pub fn records(&self) -> Result<Vec<Value>> {
        let f = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(&line)
                .map_err(|e| Error::Record(format!("{}:{}: {e}", self.path.display(), i + 1)))?;
            if !v.get("kind").is_some_and(Value::is_string) {
                return Err(Error::Record(format!("{}:{}: missing \"kind\"", self.path.display(), i + 1)));
            }
            out.push(v);
        }
        Ok(out)
    }

    /// `(kind, p)` for every record carrying a `p`.
    pub fn keys(&self) -> Result<HashSet<(String, u64)>> {
        Ok(self
            .records()?
            .iter()
            .filter_map(|r| Some((r["kind"].as_str()?.to_string(), r.get("p")?.as_u64()?)))
            .collect())
    }

    pub fn export(&self, kind: &str, format: ExportFormat, with_timing: bool) -> Result<String> {
        export_records(&self.records()?, kind, format, with_timing)
    }
}

/// `record` as a JSON object with `"kind"` first.
pub fn to_record<T: Serialize>(kind: &str, record: &T) -> Result<Value> {
    kind_fields(kind)?;
    let Value::Object(fields) = serde_json::to_value(record)? else {
        return Err(Error::Record(format!("{kind} record is not a JSON object")));
    };
    let mut obj = Map::new();
    obj.insert("kind".into(), Value::String(kind.into()));
    obj.extend(fields);
    Ok(Value::Object(obj))
}

fn sort_key(v: &Map<String, Value>) -> u64 {
    v.get("p").or_else(|| v.get("n")).and_then(Value::as_u64).unwrap_or(0)
}

/// Filter by kind, sort by `p` (or `n`) then by the remaining content.
pub fn export_records(records: &[Value], kind: &str, format: ExportFormat, with_timing: bool) -> Result<String> {
    let fields: Vec<&str> =
        kind_fields(kind)?.iter().copied().filter(|f| with_timing || !TIMING_FIELDS.contains(f)).collect();
    let mut rows: Vec<(u64, String, Map<String, Value>)> = records
        .iter()
        .filter(|r| r["kind"] == kind)
        .filter_map(|r| r.as_object())
        .map(|r| {
            let m: Map<String, Value> =
                fields.iter().map(|&f| (f.to_string(), r.get(f).cloned().unwrap_or(Value::Null))).collect();
            let key = sort_key(r);
            (key, Value::Object(m.clone()).to_string(), m)
        })
        .collect();
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    match format {
        ExportFormat::Json => {
            let arr: Vec<Value> = rows
                .into_iter()
                .map(|(_, _, m)| {
                    let mut obj = Map::new();
                    obj.insert("kind".into(), Value::String(kind.into()));
                    obj.extend(m);
                    Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&arr)?;
            s.push('\n');
            Ok(s)
        }
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(&fields).map_err(csv_err)?;
            for (_, _, m) in rows {
                let cells: Vec<String> = fields.iter().map(|f| cell(&m[*f])).collect();
                w.write_record(&cells).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
