//! Tabular output in CSV or JSON.
//!
//! Every tool renders its results through a small column/row table. CSV
//! is the default: a header line, then one line per row, floats printed
//! with Rust's shortest round-trip formatting. JSON renders the same
//! table as an array of objects; object keys come out alphabetically
//! because that is the serializer's map order.

use clap::ValueEnum;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Str(String),
    /// Rendered as an empty CSV field and a JSON null.
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity does not match the header"
        );
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut line = |cells: &mut dyn Iterator<Item = String>| {
            let joined: Vec<String> = cells.collect();
            let _ = writeln!(out, "{}", joined.join(","));
        };
        line(&mut self.columns.iter().map(|c| csv_escape(c)));
        for row in &self.rows {
            line(&mut row.iter().map(|c| match c {
                Cell::Num(x) => x.to_string(),
                Cell::Int(x) => x.to_string(),
                Cell::Str(s) => csv_escape(s),
                Cell::Empty => String::new(),
            }));
        }
        out
    }

    fn to_json(&self) -> String {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut map = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Num(x) => serde_json::Number::from_f64(*x)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null),
                        Cell::Int(x) => serde_json::Value::from(*x),
                        Cell::Str(s) => serde_json::Value::from(s.as_str()),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    map.insert(col.clone(), value);
                }
                serde_json::Value::Object(map)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&objects).expect("tables are always serializable");
        text.push('\n');
        text
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Write the rendered table to `path`, or to stdout when `path` is None.
pub fn write_table(table: &Table, format: Format, path: Option<&Path>) -> std::io::Result<()> {
    let text = table.render(format);
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
