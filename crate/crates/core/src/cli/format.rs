//! Rendering of result payloads as JSON, CSV or Markdown.
//!
//! A payload is flattened into a table: an array of objects becomes one row
//! per element, a single object becomes one row. Nested objects contribute
//! dotted column names and arrays are written as compact JSON.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format {other:?} (json, csv, markdown)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        })
    }
}

/// Column names and string cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabular {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(&key, v, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    match v {
        Value::Object(_) => flatten_into("", v, &mut out),
        other => out.push(("value".into(), cell(other))),
    }
    out
}

/// Flattens a payload into rows.
pub fn tabulate(payload: &Value) -> Tabular {
    let items: Vec<&Value> = match payload {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    let mut columns: Vec<String> = Vec::new();
    let flat: Vec<Vec<(String, String)>> = items.iter().map(|v| flatten(v)).collect();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let rows = flat
        .into_iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| {
                    row.iter()
                        .find(|(k, _)| k == c)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Tabular { columns, rows }
}

pub fn to_csv(t: &Tabular) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn from_csv(text: &str) -> Result<Tabular, csv::Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
        .collect::<Result<_, _>>()?;
    Ok(Tabular { columns, rows })
}

fn escape_md(s: &str) -> String {
    s.replace('\\', "\\\\").replace('|', "\\|")
}

fn unescape_md(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            if let Some(next) = chars.next() {
                out.push(next);
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn to_markdown(t: &Tabular) -> String {
    let mut out = String::new();
    let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
    out.push_str(&line(t.columns.iter().map(|c| escape_md(c)).collect()));
    out.push_str(&line(t.columns.iter().map(|_| "---".to_string()).collect()));
    for row in &t.rows {
        out.push_str(&line(row.iter().map(|c| escape_md(c)).collect()));
    }
    out
}

/// Splits one Markdown table line on unescaped pipes.
fn split_md_line(line: &str) -> Vec<String> {
    let inner = line.trim().trim_start_matches('|');
    let inner = inner.strip_suffix('|').unwrap_or(inner);
    let mut cells = Vec::new();
    let mut current = String::new();
    let mut escaped = false;
    for c in inner.chars() {
        if escaped {
            current.push('\\');
            current.push(c);
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '|' {
            cells.push(unescape_md(current.trim()));
            current.clear();
        } else {
            current.push(c);
        }
    }
    cells.push(unescape_md(current.trim()));
    cells
}

pub fn from_markdown(text: &str) -> Option<Tabular> {
    let mut lines = text.lines().filter(|l| l.trim_start().starts_with('|'));
    let columns = split_md_line(lines.next()?);
    lines.next()?;
    let rows = lines.map(split_md_line).collect();
    Some(Tabular { columns, rows })
}
