//! Dense real symmetric operators.

use crate::error::{Error, Result};

/// A dense real symmetric matrix, stored row-major.
///
/// Symmetry is exact: `entries[i][j] == entries[j][i]` bitwise. Constructors
/// either verify this or build the matrix from one triangle, so every value
/// of this type is safe to treat as Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: Vec<f64>,
}

impl HermitianOperator {
    /// Builds an operator from row-major entries, requiring exact symmetry.
    pub fn from_entries(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i];
                if a != b {
                    return Err(Error::NotSymmetric {
                        i,
                        j,
                        delta: (a - b).abs(),
                    });
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds an operator from possibly slightly asymmetric entries.
    ///
    /// Asymmetry up to `tolerance` (absolute) is repaired by averaging the
    /// mirrored pair; anything larger is rejected.
    pub fn symmetrized(dim: usize, mut entries: Vec<f64>, tolerance: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i];
                let delta = (a - b).abs();
                if delta > tolerance {
                    return Err(Error::NotSymmetric { i, j, delta });
                }
                let avg = 0.5 * (a + b);
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg;
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let dim = values.len();
        let mut entries = vec![0.0; dim * dim];
        for (i, &v) in values.iter().enumerate() {
            entries[i * dim + i] = v;
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; dim])
    }

    /// Rank-one operator `v vᵀ`.
    pub fn rank_one(v: &[f64]) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let dim = v.len();
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let p = v[i] * v[j];
                entries[i * dim + j] = p;
                entries[j * dim + i] = p;
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Matrix-vector product; one call is one oracle application.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Entrywise scaling `c * H`. Symmetry survives exactly because both
    /// mirrored entries go through the identical multiplication.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidScale { factor: c });
        }
        let entries = self.entries.iter().map(|x| x * c).collect::<Vec<_>>();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// `H + c * D`, requiring matching dimensions.
    pub fn add_scaled(&self, other: &Self, c: f64) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + c * b)
            .collect::<Vec<_>>();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Largest absolute difference to another operator.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
    }
}
