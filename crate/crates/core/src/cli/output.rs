//! Tables rendered as CSV or JSON.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Real(f64),
    /// Preformatted text, including exact rationals and wide floats.
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(x) => Value::from(x),
                Err(_) => Value::String(v.to_string()),
            },
            Cell::Real(v) if v.is_finite() => Value::from(*v),
            Cell::Real(v) => Value::String(fmt_real(*v)),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }
}

/// 20 significant digits; `inf`, `-inf`, `nan` otherwise.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.19e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub inputs: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self { command, inputs: Vec::new(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn input(&mut self, name: &str, value: Cell) -> &mut Self {
        self.inputs.push((name.to_string(), value));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len(), "{}", self.command);
        self.rows.push(cells);
    }

    pub fn schema_id(&self) -> String {
        format!("primecf/{}/v1", self.command)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    /// Inputs are repeated on every row so each line stands alone.
    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header = self.inputs.iter().map(|(k, _)| k.as_str()).chain(self.columns.iter().copied());
        w.write_record(header)?;
        let echoed: Vec<String> = self.inputs.iter().map(|(_, v)| v.csv()).collect();
        for row in &self.rows {
            w.write_record(echoed.iter().cloned().chain(row.iter().map(Cell::csv)))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(k, v)| (k.to_string(), v.json())).collect()))
            .collect();
        let mut root = Map::new();
        root.insert("schema".into(), Value::String(self.schema_id()));
        root.insert("inputs".into(), Value::Object(inputs));
        root.insert("rows".into(), Value::Array(rows));
        Value::Object(root)
    }
}
