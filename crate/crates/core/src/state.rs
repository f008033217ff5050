//! Unit-norm state vectors and overlap metrics.

use crate::error::{Error, Result};

/// A real unit vector; the iterate of the projection algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<f64>,
}

/// Norms below this threshold are treated as an annihilated iterate.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-300;

/// Tolerance on `|norm - 1|` when accepting externally supplied unit vectors.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-12;

impl StateVector {
    /// Normalizes a raw vector to unit norm, preserving its direction.
    ///
    /// Fails with [`Error::ZeroVector`] when the norm is below 1e-300, which
    /// signals an iterate annihilated by the operator (the kernel case).
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if raw.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() {
            return Err(Error::NonFiniteEntries);
        }
        if norm < ZERO_NORM_THRESHOLD {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amplitudes: raw.iter().map(|x| x / norm).collect(),
        })
    }

    /// Accepts a vector that is already unit norm within 1e-12.
    pub fn try_unit(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if amplitudes.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let norm = amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > UNIT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// The standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![0.0; dim];
        amplitudes[index] = 1.0;
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn component(&self, i: usize) -> f64 {
        self.amplitudes[i]
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Squared overlap `|⟨other|self⟩|²`, clamped into [0, 1].
    pub fn overlap_fidelity(&self, other: &Self) -> Result<f64> {
        let d = self.dot(other)?;
        Ok((d * d).min(1.0))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_five() {
        let v = StateVector::normalized(&[3.0, 4.0]).unwrap();
        assert_eq!(v.amplitudes(), &[0.6, 0.8]);
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(matches!(
            StateVector::normalized(&[0.0, 0.0]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn scale_is_removed() {
        let v = StateVector::normalized(&[1e-8, 0.0]).unwrap();
        assert_eq!(v.amplitudes(), &[1.0, 0.0]);
    }

    #[test]
    fn overlap_examples() {
        let e1 = StateVector::basis(2, 0).unwrap();
        let e2 = StateVector::basis(2, 1).unwrap();
        let plus = StateVector::normalized(&[1.0, 1.0]).unwrap();
        assert_eq!(e1.overlap_fidelity(&e1).unwrap(), 1.0);
        assert_eq!(e1.overlap_fidelity(&e2).unwrap(), 0.0);
        assert!((plus.overlap_fidelity(&e1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dim_mismatch() {
        let a = StateVector::basis(2, 0).unwrap();
        let b = StateVector::basis(3, 0).unwrap();
        assert!(matches!(
            a.overlap_fidelity(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
