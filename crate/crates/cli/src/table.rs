//! Tabular output: CSV for machine use and tab-separated plot data.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// One cell. Numbers are formatted when the row is built so that CSV and
/// plot data carry identical text.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Value(String),
    Absent,
}

/// Angle in degrees with six decimals.
pub fn degrees(rad: f64) -> Field {
    Field::Value(format!("{:.6}", rad.to_degrees()))
}

/// Any other real quantity, to nine significant digits.
pub fn number(x: f64) -> Field {
    Field::Value(sig9(x))
}

pub fn text(s: impl Into<String>) -> Field {
    Field::Value(s.into())
}

pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..9).contains(&e) {
        format!("{:.*}", (8 - e) as usize, x)
    } else {
        format!("{x:.8e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
    /// Comment lines written after the rows, before the provenance line.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// The listed columns, in the given order.
    pub fn select(&self, names: &[&str]) -> Table {
        let idx: Vec<usize> =
            names.iter().map(|n| self.columns.iter().position(|c| c == n).expect("selected column exists")).collect();
        Table {
            columns: names.iter().map(|c| c.to_string()).collect(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&i| r[i].clone()).collect()).collect(),
            notes: Vec::new(),
        }
    }

    pub fn to_csv(&self, provenance: &str) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out.push_str(&format!("# provenance: {provenance}\n"));
        out
    }

    /// Tab-separated columns under a `#` header, so that an absent value is
    /// an empty field between two tabs.
    pub fn to_plot_data(&self) -> Result<String, CliError> {
        if self.rows.is_empty() {
            return Err(CliError::Domain("no records to write as plot data".into()));
        }
        let mut out = format!("# {}\n", self.columns.join("\t"));
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(cell).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        Ok(out)
    }
}

fn cell(f: &Field) -> &str {
    match f {
        Field::Value(s) => s,
        Field::Absent => "",
    }
}

/// Writes `content` to `path`, or to standard output when `path` is `None`.
pub fn write_to(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Unwritable(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Unwritable(format!("standard output: {e}")))
        }
    }
}

/// Builds the plot-data text for `table` and writes it; nothing is written
/// when there are no records.
pub fn emit_plot_data(table: &Table, path: &Path) -> Result<(), CliError> {
    let text = table.to_plot_data()?;
    write_to(Some(path), &text)
}
