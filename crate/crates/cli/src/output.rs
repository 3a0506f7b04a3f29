use qalpha_core::Scalar;
use serde_json::{Map, Value};

use crate::config::Format;

/// Rows of JSON cells, rendered as aligned text, CSV, or an array of objects.
pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let objs: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> =
                            self.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect();
                        Value::Object(m)
                    })
                    .collect();
                serde_json::to_string_pretty(&Value::Array(objs)).unwrap()
            }
            Format::Csv => {
                let mut out = self.headers.join(",");
                for r in &self.rows {
                    out.push('\n');
                    out.push_str(&r.iter().map(cell).collect::<Vec<_>>().join(","));
                }
                out
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap())
                    .collect();
                let line = |r: &[String]| {
                    r.iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                let head: Vec<String> = self.headers.iter().map(|h| h.to_string()).collect();
                let mut out = line(&head);
                for r in &cells {
                    out.push('\n');
                    out.push_str(&line(r));
                }
                out
            }
        }
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn scalar_value(s: &Scalar) -> Value {
    serde_json::to_value(s).unwrap()
}
