//! Tabular scenario output and its fixed-format serialization.
//!
//! Every run writes one CSV table (long format, header row) plus a sidecar
//! metadata text file. Cell formatting is fixed — floats carry exactly 12
//! significant digits with a '.' separator — so identical configurations
//! produce byte-identical files on every platform.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Formats a float with 12 significant digits, stable across platforms.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    format!("{x:.11e}")
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Empty,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Str(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Str(v) => Some(v),
            _ => None,
        }
    }
}

/// A scenario's table plus the provenance that goes into the sidecar file.
#[derive(Debug, Clone)]
pub struct ScenarioResult {
    scenario: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    config_echo: Vec<(String, String)>,
    summary: Vec<(String, String)>,
    caveats: Vec<&'static str>,
}

impl ScenarioResult {
    pub fn new(scenario: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            scenario,
            columns,
            rows: Vec::new(),
            config_echo: Vec::new(),
            summary: Vec::new(),
            caveats: Vec::new(),
        }
    }

    pub fn scenario(&self) -> &'static str {
        self.scenario
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn set_config_echo(&mut self, echo: Vec<(String, String)>) {
        self.config_echo = echo;
    }

    pub fn push_summary(&mut self, key: &str, value: String) {
        self.summary.push((key.to_string(), value));
    }

    pub fn push_caveat(&mut self, text: &'static str) {
        self.caveats.push(text);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn summary(&self) -> &[(String, String)] {
        &self.summary
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Cells of one column, in row order.
    pub fn column(&self, name: &str) -> Vec<&Cell> {
        let idx = self
            .column_index(name)
            .unwrap_or_else(|| panic!("no column named {name}"));
        self.rows.iter().map(|r| &r[idx]).collect()
    }

    /// Rows for which `filter_column == value`.
    pub fn rows_where(&self, filter_column: &str, value: &Cell) -> Vec<&Vec<Cell>> {
        let idx = self
            .column_index(filter_column)
            .unwrap_or_else(|| panic!("no column named {filter_column}"));
        self.rows.iter().filter(|r| &r[idx] == value).collect()
    }

    pub fn csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn metadata_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario = {}", self.scenario);
        let _ = writeln!(out, "version = {}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.config_echo {
            let _ = writeln!(out, "config.{k} = {v}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "summary.{k} = {v}");
        }
        for c in &self.caveats {
            let _ = writeln!(out, "caveat = {c}");
        }
        out
    }

    /// Writes `<scenario>.csv` and `<scenario>.meta.txt` under `out_dir`,
    /// returning both paths.
    pub fn write(&self, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(out_dir)?;
        let csv_path = out_dir.join(format!("{}.csv", self.scenario));
        let meta_path = out_dir.join(format!("{}.meta.txt", self.scenario));
        std::fs::write(&csv_path, self.csv_string())?;
        std::fs::write(&meta_path, self.metadata_string())?;
        Ok((csv_path, meta_path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width_significand() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1.00000000000e0");
        assert_eq!(format_float(0.5), "5.00000000000e-1");
        assert_eq!(format_float(-123.456), "-1.23456000000e2");
    }

    #[test]
    fn csv_layout() {
        let mut r = ScenarioResult::new("demo", vec!["a", "b"]);
        r.push_row(vec![Cell::Int(1), Cell::Bool(true)]);
        r.push_row(vec![Cell::Float(0.25), Cell::Empty]);
        assert_eq!(r.csv_string(), "a,b\n1,true\n2.50000000000e-1,\n");
    }
}
