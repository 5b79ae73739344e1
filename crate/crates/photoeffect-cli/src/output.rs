//! Deterministic CSV and JSON rendering.
//!
//! CSV cells carry 12 significant digits; complex quantities are split
//! into `_re`/`_im` column pairs upstream. JSON comes from serde with
//! struct field order, so identical runs are byte-identical.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum UnitsMode {
    Atomic,
    Si,
}

/// A rectangular numeric table with named columns.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_sig12(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of one object per row, keyed by column name.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), json_number(*v)))
                    .collect()
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("table serialization");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// 12 significant digits, scientific notation.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000e0".into();
    }
    format!("{v:.11e}")
}

fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// Render a serializable report as pretty JSON (one trailing newline).
pub fn report_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// Render a serializable report as a single-row CSV: header of flattened
/// field names, one value row. Nested objects flatten with `.`-joined
/// keys; complex pairs arrive as `_re`/`_im` fields upstream.
pub fn report_csv<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serialization");
    let mut fields = Vec::new();
    flatten_json("", &v, &mut fields);
    let header: Vec<&str> = fields.iter().map(|(k, _)| k.as_str()).collect();
    let cells: Vec<String> = fields
        .iter()
        .map(|(_, v)| match v {
            serde_json::Value::Number(n) => {
                format_sig12(n.as_f64().expect("numeric cell"))
            }
            serde_json::Value::Bool(b) => b.to_string(),
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => String::new(),
            other => other.to_string(),
        })
        .collect();
    format!("{}\n{}\n", header.join(","), cells.join(","))
}

fn flatten_json(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, serde_json::Value)>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_json(&key, val, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}
