//! Rendering of command reports as CSV, JSON or an aligned text table.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy)]
pub struct OutputConfig {
    pub format: Format,
    /// Significant decimal digits for reals, 1..=17.
    pub precision: usize,
}

/// Round to `precision` significant digits, then print the shortest string that
/// reads back to the rounded value.
pub fn format_real(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_real(x, precision);
    if r == 0.0 {
        // no "-0"
        "0".into()
    } else if r.abs() < 1e-5 || r.abs() >= 1e16 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_real(x: f64, precision: usize) -> f64 {
    format!("{:.*e}", precision.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Bool(bool),
    Text(String),
    Indices(Vec<usize>),
    Reals(Vec<f64>),
    Missing,
}

impl Cell {
    fn to_text(&self, precision: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v, precision),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Indices(v) => v
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            Cell::Reals(v) => v
                .iter()
                .map(|&x| format_real(x, precision))
                .collect::<Vec<_>>()
                .join(";"),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self, precision: usize) -> Value {
        let real = |x: f64| {
            if x.is_finite() {
                json!(round_real(x, precision))
            } else {
                json!(format_real(x, precision))
            }
        };
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => real(*v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Indices(v) => json!(v),
            Cell::Reals(v) => Value::Array(v.iter().map(|&x| real(x)).collect()),
            Cell::Missing => Value::Null,
        }
    }
}

/// A finished command result: one table plus optional summary fields.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// JSON key for the row array (`rows` or `samples`).
    pub rows_key: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    /// Settings echoed into the provenance line / metadata object.
    pub meta: Vec<(&'static str, String)>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            rows_key: "rows",
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn render(&self, cfg: &OutputConfig, out: &mut dyn Write) -> Result<()> {
        match cfg.format {
            Format::Csv => self.render_csv(cfg.precision, out),
            Format::Json => self.render_json(cfg.precision, out),
            Format::Pretty => self.render_pretty(cfg.precision, out),
        }
    }

    fn provenance(&self) -> String {
        let mut line = format!(
            "twodist {} command={}",
            env!("CARGO_PKG_VERSION"),
            self.command
        );
        for (k, v) in &self.meta {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }

    fn render_csv(&self, precision: usize, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "# {}", self.provenance())?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut *out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_text(precision)))?;
        }
        w.flush()?;
        drop(w);
        for (k, v) in &self.summary {
            writeln!(out, "# {k}={}", v.to_text(precision))?;
        }
        Ok(())
    }

    fn render_json(&self, precision: usize, out: &mut dyn Write) -> Result<()> {
        let mut meta = Map::new();
        meta.insert("tool".into(), json!("twodist"));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            meta.insert((*k).into(), json!(v));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| ((*k).to_string(), c.to_json(precision)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(meta));
        top.insert(self.rows_key.into(), Value::Array(rows));
        if !self.summary.is_empty() {
            let summary: Map<String, Value> = self
                .summary
                .iter()
                .map(|(k, c)| ((*k).to_string(), c.to_json(precision)))
                .collect();
            top.insert("summary".into(), Value::Object(summary));
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
        writeln!(out)?;
        Ok(())
    }

    fn render_pretty(&self, precision: usize, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "{}", self.provenance())?;
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_text(precision)).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, h)| cells.iter().map(|r| r[j].len()).fold(h.len(), usize::max))
            .collect();
        let line = |fields: Vec<&str>| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {}", v.to_text(precision))?;
        }
        Ok(())
    }
}
