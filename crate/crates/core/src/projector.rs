//! Orthogonal projectors onto low-rank subspaces.

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::state::StateVector;

const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Projector `P = Σ b bᵀ` over an orthonormal basis of rank R ≥ 1.
#[derive(Debug, Clone)]
pub struct SubspaceProjector {
    dim: usize,
    basis: Vec<StateVector>,
}

impl SubspaceProjector {
    /// Builds a projector, verifying the basis is orthonormal within 1e-10.
    pub fn try_new(basis: Vec<StateVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let dim = basis[0].dim();
        for b in &basis {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: b.dim(),
                });
            }
        }
        if basis.len() > dim {
            return Err(Error::RankOutOfRange {
                rank: basis.len(),
                dim,
            });
        }
        let mut deviation = 0.0f64;
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let g = basis[i].dot(&basis[j])?;
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((g - target).abs());
            }
        }
        if deviation > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { dim, basis })
    }

    /// Span of a set of distinct standard basis directions.
    pub fn from_basis_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let basis = indices
            .iter()
            .map(|&i| StateVector::basis(dim, i))
            .collect::<Result<Vec<_>>>()?;
        Self::try_new(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    /// `⟨φ|P|φ⟩ = Σ_b |⟨b|φ⟩|²`, clamped into [0, 1].
    pub fn subspace_fidelity(&self, phi: &StateVector) -> Result<f64> {
        if phi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: phi.dim(),
            });
        }
        let mut f = 0.0;
        for b in &self.basis {
            let d = b.dot(phi)?;
            f += d * d;
        }
        Ok(f.min(1.0))
    }

    /// The dense matrix of the projector.
    pub fn matrix(&self) -> HermitianOperator {
        let n = self.dim;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut p = 0.0;
                for b in &self.basis {
                    p += b.component(i) * b.component(j);
                }
                entries[i * n + j] = p;
                entries[j * n + i] = p;
            }
        }
        HermitianOperator::from_entries(n, entries).expect("projector matrix is symmetric")
    }
}

/// Average subspace fidelity deficit `1 - trace(P_a P_b) / R`.
///
/// Zero iff the two rank-R subspaces coincide; one iff they are orthogonal.
pub fn subspace_distance(a: &SubspaceProjector, b: &SubspaceProjector) -> Result<f64> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let mut trace = 0.0;
    for u in a.basis() {
        for v in b.basis() {
            let d = u.dot(v)?;
            trace += d * d;
        }
    }
    Ok((1.0 - trace / a.rank() as f64).clamp(0.0, 1.0))
}
