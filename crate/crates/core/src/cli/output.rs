//! Output records, CSV/JSON serialization and atomic writes.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;

use super::args::Format;
use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    GapCurve,
    Ecdf,
    Histogram,
    ProportionTable,
    /// Reference density sampled on a t grid.
    DensityCurve,
    /// Raw eigenvalues, one row per eigenvalue.
    Eigenvalues,
    Selfcheck,
}

impl Schema {
    pub fn id(self) -> &'static str {
        match self {
            Schema::GapCurve => "gap-curve",
            Schema::Ecdf => "ecdf",
            Schema::Histogram => "histogram",
            Schema::ProportionTable => "proportion-largest-real",
            Schema::DensityCurve => "density-curve",
            Schema::Eigenvalues => "eigenvalues",
            Schema::Selfcheck => "selfcheck",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Schema::GapCurve => &["t", "probability", "method", "n", "nodes", "L", "L2"],
            Schema::Ecdf => &["t", "ecdf", "stderr"],
            Schema::Histogram => &["bin_left", "bin_right", "count", "density"],
            Schema::ProportionTable => &["n", "samples", "proportion_largest_real", "stderr"],
            Schema::DensityCurve => &["t", "density"],
            Schema::Eigenvalues => &["sample", "re", "im"],
            Schema::Selfcheck => &["suite", "check", "value", "limit", "passed"],
        }
    }

    /// Columns holding probabilities, checked to lie in [0, 1] before writing.
    fn probability_columns(self) -> &'static [usize] {
        match self {
            Schema::GapCurve => &[1],
            Schema::Ecdf => &[1],
            Schema::ProportionTable => &[2],
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Cell::Float(x) if x.is_finite() => format_float(*x),
            Cell::Float(_) => "null".into(),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => Value::String(s.clone()).to_string(),
        }
    }
}

/// 17 significant digits, which round-trips every f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub schema: Schema,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Value,
}

impl OutputRecord {
    pub fn new(schema: Schema, metadata: Value) -> Self {
        Self { schema, rows: Vec::new(), metadata }
    }

    pub fn check(&self) -> Result<(), CliError> {
        let width = self.schema.columns().len();
        for row in &self.rows {
            if row.len() != width {
                return Err(CliError::Check(format!("{} row has {} cells, expected {width}", self.schema.id(), row.len())));
            }
            if let Some(Cell::Text(s)) = row.iter().find(|c| matches!(c, Cell::Text(s) if s.contains([',', '\n']))) {
                return Err(CliError::Check(format!("{} text cell `{s}` contains a separator", self.schema.id())));
            }
            for &c in self.schema.probability_columns() {
                if let Cell::Float(p) = row[c] {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(CliError::Check(format!("{} value {p} outside [0, 1]", self.schema.id())));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.schema.columns().join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("{\n");
        let meta = serde_json::to_string_pretty(&self.metadata).expect("metadata serializes");
        let meta = meta.replace('\n', "\n  ");
        let _ = writeln!(s, "  \"metadata\": {meta},");
        let _ = writeln!(s, "  \"schema\": {},", Value::String(self.schema.id().into()));
        let cols: Vec<String> = self.schema.columns().iter().map(|c| Value::String((*c).into()).to_string()).collect();
        let _ = writeln!(s, "  \"columns\": [{}],", cols.join(", "));
        s.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Cell::render_json).collect();
            s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            s.push_str(&cells.join(", "));
            s.push(']');
        }
        s.push_str(if self.rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Write to a temporary sibling and rename over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_path_buf(), source: e };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| io(std::io::Error::other("path has no file name")))?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

pub fn write_output(record: &OutputRecord, path: &Path, format: Format) -> Result<(), CliError> {
    record.check()?;
    write_atomic(path, &record.render(format))
}

/// Split a CSV written by [`OutputRecord::to_csv`] into header and rows.
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}
