//! Dataset ingestion and standardization.
//!
//! CSV format: UTF-8, comma-separated, first row is a header, every column
//! decimal except an optional integer label column selected by name.

use std::path::Path;

use thiserror::Error;

use crate::error::Error as CoreError;

/// Errors raised by the classical-data layer.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("label column '{name}' not found in header")]
    LabelColumnNotFound { name: String },

    #[error("empty cell at row {row}, column '{column}'")]
    MissingCell { row: usize, column: String },

    #[error("non-numeric value '{value}' at row {row}, column '{column}'")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },

    #[error("non-finite value at row {row}, column '{column}'")]
    NonFiniteCell { row: usize, column: String },

    #[error("label '{value}' at row {row} is not an integer")]
    BadLabel { row: usize, value: String },

    #[error("dataset needs at least 2 samples, got {n}")]
    TooFewSamples { n: usize },

    #[error("dataset has no feature columns")]
    NoFeatures,

    #[error("labels length {got} does not match {expected} samples")]
    LabelLengthMismatch { expected: usize, got: usize },

    #[error("feature {feature} has (near-)zero variance; standardization is undefined")]
    ZeroVariance { feature: usize },

    #[error("row {row} has zero norm and cannot be amplitude-encoded")]
    ZeroRow { row: usize },

    #[error(transparent)]
    Numeric(#[from] CoreError),
}

pub type DataResult<T> = std::result::Result<T, DataError>;

/// An n×d table of finite reals, optionally labeled per row.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n_samples: usize,
    n_features: usize,
    values: Vec<f64>,
    labels: Option<Vec<i64>>,
}

impl DataMatrix {
    pub fn new(
        n_samples: usize,
        n_features: usize,
        values: Vec<f64>,
        labels: Option<Vec<i64>>,
    ) -> DataResult<Self> {
        if n_samples < 2 {
            return Err(DataError::TooFewSamples { n: n_samples });
        }
        if n_features == 0 {
            return Err(DataError::NoFeatures);
        }
        if values.len() != n_samples * n_features {
            return Err(DataError::Numeric(CoreError::BadEntryCount {
                dim: n_samples,
                expected: n_samples * n_features,
                got: values.len(),
            }));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(DataError::Numeric(CoreError::NonFiniteEntries));
        }
        if let Some(l) = &labels {
            if l.len() != n_samples {
                return Err(DataError::LabelLengthMismatch {
                    expected: n_samples,
                    got: l.len(),
                });
            }
        }
        Ok(Self {
            n_samples,
            n_features,
            values,
            labels,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-feature means.
    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.n_features];
        for i in 0..self.n_samples {
            for (m, &x) in means.iter_mut().zip(self.row(i)) {
                *m += x;
            }
        }
        let n = self.n_samples as f64;
        for m in &mut means {
            *m /= n;
        }
        means
    }

    /// New matrix keeping only the given rows, labels included.
    pub fn subset(&self, rows: &[usize]) -> DataResult<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.n_features);
        for &r in rows {
            values.extend_from_slice(self.row(r));
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| rows.iter().map(|&r| l[r]).collect());
        Self::new(rows.len(), self.n_features, values, labels)
    }
}

/// Loads a headered CSV, optionally extracting one integer label column.
///
/// Row order is preserved. Blank, non-numeric, or non-finite cells are
/// rejected with the offending row and column named.
pub fn load_csv(path: &Path, label_column: Option<&str>) -> DataResult<DataMatrix> {
    let file = std::fs::File::open(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers: Vec<String> = reader
        .headers()?
        .iter()
        .map(|h| h.to_string())
        .collect();
    let label_index = match label_column {
        Some(name) => Some(
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| DataError::LabelColumnNotFound {
                    name: name.to_string(),
                })?,
        ),
        None => None,
    };
    let feature_count = headers.len() - usize::from(label_index.is_some());
    if feature_count == 0 {
        return Err(DataError::NoFeatures);
    }

    let mut values = Vec::new();
    let mut labels: Vec<i64> = Vec::new();
    let mut n_samples = 0usize;
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        // 1-based data row numbers in diagnostics (header is row 0).
        let row = row_idx + 1;
        for (col, cell) in record.iter().enumerate() {
            let column = headers
                .get(col)
                .cloned()
                .unwrap_or_else(|| format!("#{col}"));
            if Some(col) == label_index {
                if cell.is_empty() {
                    return Err(DataError::MissingCell { row, column });
                }
                let label = cell.parse::<i64>().map_err(|_| DataError::BadLabel {
                    row,
                    value: cell.to_string(),
                })?;
                labels.push(label);
                continue;
            }
            if cell.is_empty() {
                return Err(DataError::MissingCell { row, column });
            }
            let value = cell
                .parse::<f64>()
                .map_err(|_| DataError::NonNumericCell {
                    row,
                    column: column.clone(),
                    value: cell.to_string(),
                })?;
            if !value.is_finite() {
                return Err(DataError::NonFiniteCell { row, column });
            }
            values.push(value);
        }
        n_samples += 1;
    }

    DataMatrix::new(
        n_samples,
        feature_count,
        values,
        label_index.map(|_| labels),
    )
}

/// Rescales every feature to zero mean and unit sample standard deviation
/// (divisor n−1). Labels pass through. A feature whose standard deviation is
/// below `1e-12 · max(1, |mean|)` is rejected rather than silently dropped.
pub fn standardize(x: &DataMatrix) -> DataResult<DataMatrix> {
    let n = x.n_samples();
    let d = x.n_features();
    let means = x.column_means();
    let mut sds = vec![0.0; d];
    for i in 0..n {
        for (j, &v) in x.row(i).iter().enumerate() {
            let c = v - means[j];
            sds[j] += c * c;
        }
    }
    for (j, s) in sds.iter_mut().enumerate() {
        *s = (*s / (n as f64 - 1.0)).sqrt();
        if *s <= 1e-12 * means[j].abs().max(1.0) {
            return Err(DataError::ZeroVariance { feature: j });
        }
    }
    let mut values = Vec::with_capacity(n * d);
    for i in 0..n {
        for (j, &v) in x.row(i).iter().enumerate() {
            values.push((v - means[j]) / sds[j]);
        }
    }
    DataMatrix::new(n, d, values, x.labels.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn loads_plain_table() {
        let f = write_temp("a,b\n1,2\n3,4\n5,6\n");
        let m = load_csv(f.path(), None).unwrap();
        assert_eq!(m.n_samples(), 3);
        assert_eq!(m.n_features(), 2);
        assert_eq!(m.row(2), &[5.0, 6.0]);
        assert!(m.labels().is_none());
    }

    #[test]
    fn extracts_label_column() {
        let f = write_temp("x,label,y\n1,0,2\n3,1,4\n");
        let m = load_csv(f.path(), Some("label")).unwrap();
        assert_eq!(m.n_features(), 2);
        assert_eq!(m.labels(), Some(&[0i64, 1][..]));
        assert_eq!(m.row(0), &[1.0, 2.0]);
    }

    #[test]
    fn blank_cell_names_the_location() {
        let f = write_temp("a,b\n1,\n3,4\n");
        match load_csv(f.path(), None) {
            Err(DataError::MissingCell { row, column }) => {
                assert_eq!(row, 1);
                assert_eq!(column, "b");
            }
            other => panic!("expected MissingCell, got {other:?}"),
        }
    }

    #[test]
    fn non_numeric_cell_rejected() {
        let f = write_temp("a,b\n1,hello\n3,4\n");
        assert!(matches!(
            load_csv(f.path(), None),
            Err(DataError::NonNumericCell { .. })
        ));
    }

    #[test]
    fn nan_cell_rejected() {
        let f = write_temp("a,b\n1,NaN\n3,4\n");
        assert!(matches!(
            load_csv(f.path(), None),
            Err(DataError::NonFiniteCell { .. })
        ));
    }

    #[test]
    fn standardize_example() {
        let m = DataMatrix::new(3, 1, vec![1.0, 2.0, 3.0], None).unwrap();
        let s = standardize(&m).unwrap();
        assert_eq!(s.values(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn standardize_is_idempotent() {
        let m = DataMatrix::new(4, 2, vec![1.0, 9.0, 2.0, 3.5, 4.0, -1.0, 0.5, 2.0], None).unwrap();
        let once = standardize(&m).unwrap();
        let twice = standardize(&once).unwrap();
        for (a, b) in once.values().iter().zip(twice.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_feature_rejected() {
        let m = DataMatrix::new(3, 2, vec![0.1, 1.0, 0.1, 2.0, 0.1, 3.0], None).unwrap();
        match standardize(&m) {
            Err(DataError::ZeroVariance { feature }) => assert_eq!(feature, 0),
            other => panic!("expected ZeroVariance, got {other:?}"),
        }
    }
}
