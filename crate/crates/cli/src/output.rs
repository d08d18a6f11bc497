use std::io::Write;
use std::path::Path;

use blochkit::DiskGrid;
use serde::Serialize;
use serde_json::Value;

use crate::{Format, JobError};

/// Every report carries the command, library version, grid and seed.
#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub command: &'a str,
    pub version: &'a str,
    pub grid: &'a DiskGrid,
    pub seed: u64,
    #[serde(flatten)]
    pub body: T,
}

/// Scalar leaves as `(dotted.path, text)`. Arrays are skipped except
/// complex pairs `[re, im]`, which become `path.re` and `path.im`.
pub fn scalar_leaves(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            if let [Value::Number(re), Value::Number(im)] = items.as_slice() {
                out.push((join("re"), re.to_string()));
                out.push((join("im"), im.to_string()));
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => out.push((prefix.to_string(), n.to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

fn to_csv(value: &Value) -> Result<Vec<u8>, JobError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| JobError::Io(e.to_string());
    // row-shaped reports (the verify-suite table) get one CSV row per entry
    if let Some(Value::Array(rows)) = value.get("checks") {
        w.write_record(["name", "passed", "detail"]).map_err(io)?;
        for row in rows {
            let field = |k: &str| match row.get(k) {
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            };
            w.write_record([field("name"), field("passed"), field("detail")]).map_err(io)?;
        }
    } else {
        let leaves = scalar_leaves(value);
        w.write_record(leaves.iter().map(|(k, _)| k.as_str())).map_err(io)?;
        w.write_record(leaves.iter().map(|(_, v)| v.as_str())).map_err(io)?;
    }
    w.into_inner().map_err(|e| JobError::Io(e.to_string()))
}

pub fn emit<T: Serialize>(report: &Report<'_, T>, format: Format, path: Option<&Path>) -> Result<(), JobError> {
    let value = serde_json::to_value(report).map_err(|e| JobError::Io(e.to_string()))?;
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&value).map_err(|e| JobError::Io(e.to_string()))?;
            b.push(b'\n');
            b
        }
        Format::Csv => to_csv(&value)?,
    };
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| JobError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| JobError::Io(e.to_string())),
    }
}
