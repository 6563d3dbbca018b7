//! Reports and their three renderings.
//!
//! Every JSON report is an object with `schema`, `version`, `command` and
//! `contract`, the command's summary fields, `columns` and `rows` (one object
//! per row), plus command specific extras such as `decisions`.

use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::args::Format;
use effshift_core::engine::MINIMALITY_CONTRACT;

pub const REPORT_SCHEMA: &str = "effshift-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub summary: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub extra: Map<String, Value>,
    /// Some requested answer stayed unknown within the budget.
    pub exhausted: bool,
    /// Some replayed certificate was rejected.
    pub rejected: bool,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Report {
            command,
            summary: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            extra: Map::new(),
            exhausted: false,
            rejected: false,
        }
    }

    pub fn set(&mut self, key: &'static str, value: impl Into<Value>) {
        self.summary.push((key, value.into()));
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), REPORT_SCHEMA.into());
        m.insert("version".into(), VERSION.into());
        m.insert("command".into(), self.command.into());
        m.insert("contract".into(), MINIMALITY_CONTRACT.into());
        for (k, v) in &self.summary {
            m.insert((*k).into(), v.clone());
        }
        m.insert("columns".into(), self.columns.iter().map(|&c| Value::from(c)).collect());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(c, v)| ((*c).to_string(), v.clone())).collect();
                Value::Object(obj)
            })
            .collect();
        m.insert("rows".into(), Value::Array(rows));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    /// Render on `out`. CSV output stays a plain table, so its contract line
    /// goes to `note` instead.
    pub fn render(&self, format: Format, out: &mut dyn Write, note: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let text = serde_json::to_string_pretty(&self.to_json()).map_err(io::Error::other)?;
                writeln!(out, "{text}")
            }
            Format::Csv => {
                writeln!(note, "contract: {MINIMALITY_CONTRACT}")?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).map_err(io::Error::other)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(cell)).map_err(io::Error::other)?;
                }
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                out.write_all(&bytes)
            }
            Format::Table => self.render_table(out),
        }
    }

    fn render_table(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "effshift {VERSION}: {}", self.command)?;
        writeln!(out, "contract: {MINIMALITY_CONTRACT}")?;
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {}", cell(v))?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &cells {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        writeln!(out)?;
        let line = |parts: Vec<String>| parts.join("  ").trim_end().to_string();
        writeln!(
            out,
            "{}",
            line(self.columns.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect())
        )?;
        writeln!(out, "{}", line(widths.iter().map(|w| "-".repeat(*w)).collect()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect()))?;
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
