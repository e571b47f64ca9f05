//! CSV and JSON emission.
//!
//! One header row, snake_case columns, floats at 17 significant digits so
//! values round-trip losslessly into external tools. The JSON mirror carries
//! the same field names.

use std::fs;
use std::path::Path;

use ampforge::Result;

/// A finished table: ordered column names plus stringified rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, value) in self.columns.iter().zip(row) {
                    obj.insert(name.to_string(), parse_cell(value));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "rows": rows })).expect("serializable")
    }
}

fn parse_cell(s: &str) -> serde_json::Value {
    if let Ok(i) = s.parse::<i64>() {
        return serde_json::Value::from(i);
    }
    if let Ok(f) = s.parse::<f64>() {
        if let Some(n) = serde_json::Number::from_f64(f) {
            return serde_json::Value::Number(n);
        }
    }
    if s == "true" || s == "false" {
        return serde_json::Value::Bool(s == "true");
    }
    serde_json::Value::String(s.to_string())
}

/// 17-significant-digit float formatting.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_u(x: u64) -> String {
    x.to_string()
}

pub fn fmt_b(x: bool) -> String {
    x.to_string()
}

/// Writes `<prefix>.csv` and `<prefix>.json`.
pub fn write_outputs(prefix: &Path, table: &Table) -> Result<()> {
    let write = |ext: &str, body: String| -> Result<()> {
        let path = prefix.with_extension(ext);
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(io_err)?;
            }
        }
        fs::write(&path, body).map_err(io_err)
    };
    write("csv", table.to_csv())?;
    write("json", table.to_json())
}

fn io_err(e: std::io::Error) -> ampforge::Error {
    ampforge::Error::InvalidParameter {
        name: "output",
        message: e.to_string(),
    }
}
