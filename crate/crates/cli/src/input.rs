//! Parsing of operator and initial-state inputs.

use std::path::Path;

use fspa_core::{HermitianOperator, StateVector};

/// Loads a square numeric CSV without a header row. Symmetry is validated to
/// 1e-12 and then repaired exactly by averaging mirrored entries.
pub fn load_operator_csv(path: &Path) -> Result<HermitianOperator, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read operator file {}: {e}", path.display()))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, cell) in line.split(',').enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| {
                format!(
                    "non-numeric value '{}' at line {}, column {}",
                    cell.trim(),
                    line_no + 1,
                    col + 1
                )
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    let dim = rows.len();
    if dim == 0 {
        return Err("operator file is empty".into());
    }
    if rows.iter().any(|r| r.len() != dim) {
        return Err(format!("operator must be square; found {dim} rows"));
    }
    let entries: Vec<f64> = rows.into_iter().flatten().collect();
    HermitianOperator::symmetrized(dim, entries, 1e-12).map_err(|e| e.to_string())
}

/// Inline operator spec. Currently one form: `diag:v1,v2,...`.
pub fn parse_operator_spec(spec: &str) -> Result<HermitianOperator, String> {
    let rest = spec
        .strip_prefix("diag:")
        .ok_or_else(|| format!("unsupported operator spec '{spec}' (expected diag:v1,v2,...)"))?;
    let values = parse_float_list(rest)?;
    HermitianOperator::diagonal(&values).map_err(|e| e.to_string())
}

/// Initial-state spec: `uniform`, `basis:<index>` (0-based), or a comma list
/// of amplitudes which is normalized.
pub fn parse_init(spec: &str, dim: usize) -> Result<StateVector, String> {
    if spec == "uniform" {
        return StateVector::normalized(&vec![1.0; dim]).map_err(|e| e.to_string());
    }
    if let Some(index) = spec.strip_prefix("basis:") {
        let index: usize = index
            .parse()
            .map_err(|_| format!("bad basis index '{index}'"))?;
        return StateVector::basis(dim, index).map_err(|e| e.to_string());
    }
    let raw = parse_float_list(spec)?;
    if raw.len() != dim {
        return Err(format!(
            "initial state has {} amplitudes but the operator has dimension {dim}",
            raw.len()
        ));
    }
    StateVector::normalized(&raw).map_err(|e| e.to_string())
}

fn parse_float_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{}'", v.trim()))
        })
        .collect()
}
