//! Tables and their CSV / JSON encodings.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            // shortest round-trip representation
            Cell::Num(v) => format!("{v}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Column-labelled rows plus a free-form metadata object.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            metadata: Map::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: Value) -> &mut Self {
        self.metadata.insert(key.to_owned(), value);
        self
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of one column; `None` for text or empty cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[k].as_f64()).collect())
    }

    /// Appends columns from `other`, which must have the same row count.
    /// The first `skip` columns of `other` are dropped.
    pub fn join(&mut self, other: Table, skip: usize) {
        assert_eq!(self.rows.len(), other.rows.len(), "joined tables differ in length");
        self.columns.extend(other.columns.into_iter().skip(skip));
        for (row, extra) in self.rows.iter_mut().zip(other.rows) {
            row.extend(extra.into_iter().skip(skip));
        }
    }

    pub fn write<W: Write>(&self, w: &mut W, format: Format) -> std::io::Result<()> {
        let mut metadata = self.metadata.clone();
        metadata.insert("generated_unix".into(), json!(timestamp()));
        match format {
            Format::Csv => {
                writeln!(w, "# {}", Value::Object(metadata))?;
                writeln!(w, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(w, "{}", line.join(","))?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect();
                let doc = json!({ "metadata": metadata, "columns": self.columns, "rows": rows });
                serde_json::to_writer_pretty(&mut *w, &doc)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }

    pub fn emit(&self, out: Option<&std::path::Path>, format: Format) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(e.to_string());
        match out {
            Some(path) => {
                let file = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                let mut w = std::io::BufWriter::new(file);
                self.write(&mut w, format).map_err(io)?;
                w.flush().map_err(io)
            }
            None => {
                let stdout = std::io::stdout();
                let mut w = stdout.lock();
                self.write(&mut w, format).map_err(io)
            }
        }
    }
}

/// Seconds since the epoch, or `SOURCE_DATE_EPOCH` when set.
fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()) {
        return t;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["n".into(), "p".into()]);
        t.meta("quantity", json!("pnd"));
        t.rows.push(vec![Cell::Num(0.0), Cell::Num(0.25)]);
        t.rows.push(vec![Cell::Num(1.0), Cell::Empty]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# {"));
        let meta: Value = serde_json::from_str(&lines[0][2..]).unwrap();
        assert_eq!(meta["quantity"], "pnd");
        assert!(meta["generated_unix"].is_u64());
        assert_eq!(&lines[1..], ["n,p", "0,0.25", "1,"]);
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(vec!["check".into(), "value".into()]);
        t.rows.push(vec!["a,b".into(), Cell::Num(f64::NAN)]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Json).unwrap();
        let doc: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["columns"][1], "value");
        assert_eq!(doc["rows"][0][0], "a,b");
        assert_eq!(doc["rows"][0][1], "NaN");
        let mut csv = Vec::new();
        t.write(&mut csv, Format::Csv).unwrap();
        assert!(String::from_utf8(csv).unwrap().ends_with("\"a,b\",NaN\n"));
    }
}
