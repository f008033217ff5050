//! Symmetric eigendecomposition via cyclic Jacobi sweeps.
//!
//! The solver is deliberately dependency-free: plain IEEE arithmetic with a
//! fixed sweep order makes the decomposition bit-reproducible across
//! platforms, which the experiment harness relies on. Eigenvalues come back
//! in descending order; within exactly degenerate groups the eigenvectors are
//! sign-canonicalized (first nonzero component positive) and ordered
//! lexicographically, largest first, so that e.g. the identity matrix yields
//! the standard basis in natural order.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::projector::SubspaceProjector;
use crate::state::StateVector;

/// Eigenvalues in descending order together with an orthonormal eigenbasis.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<StateVector>,
}

const MAX_SWEEPS: usize = 64;
const ORTHONORMALITY_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-10;

impl Spectrum {
    /// Assembles a spectrum from parts, validating ordering and orthonormality.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: Vec<StateVector>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if eigenvalues.len() != eigenvectors.len() {
            return Err(Error::DimensionMismatch {
                left: eigenvalues.len(),
                right: eigenvectors.len(),
            });
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let dim = eigenvectors[0].dim();
        if eigenvectors.iter().any(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: eigenvalues.len(),
            });
        }
        for j in 1..eigenvalues.len() {
            if eigenvalues[j] > eigenvalues[j - 1] {
                return Err(Error::NotDescending { position: j });
            }
        }
        let deviation = max_gram_deviation(&eigenvectors);
        if deviation > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, j: usize) -> Result<&StateVector> {
        self.eigenvectors.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            dim: self.eigenvalues.len(),
        })
    }

    pub fn eigenvectors(&self) -> &[StateVector] {
        &self.eigenvectors
    }

    /// Same eigenbasis with every eigenvalue multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidScale { factor });
        }
        Ok(Self {
            eigenvalues: self.eigenvalues.iter().map(|l| l * factor).collect(),
            eigenvectors: self.eigenvectors.clone(),
        })
    }

    /// Projector onto the span of the first `k` eigenvectors.
    pub fn principal_projector(&self, k: usize) -> Result<SubspaceProjector> {
        if k == 0 || k > self.dim() {
            return Err(Error::RankOutOfRange {
                rank: k,
                dim: self.dim(),
            });
        }
        SubspaceProjector::try_new(self.eigenvectors[..k].to_vec())
    }
}

/// Sign-invariant rotation of the `j`-th eigenvector between two spectra:
/// `1 - |⟨ψ_j^a|ψ_j^b⟩|²`.
pub fn eigenvector_rotation(a: &Spectrum, b: &Spectrum, j: usize) -> Result<f64> {
    let va = a.eigenvector(j)?;
    let vb = b.eigenvector(j)?;
    Ok((1.0 - va.overlap_fidelity(vb)?).clamp(0.0, 1.0))
}

/// Full eigendecomposition of a symmetric operator.
pub fn eigendecompose(op: &HermitianOperator) -> Result<Spectrum> {
    let n = op.dim();
    let mut a = op.entries().to_vec();
    // Eigenvector matrix, column j is the j-th eigenvector.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let scale = op.max_abs_entry();
    if scale > 0.0 {
        let stop_tol = 1e-14 * scale;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut off_max = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off_max = off_max.max(a[p * n + q].abs());
                }
            }
            if off_max <= stop_tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= stop_tol {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    // Smaller-angle root of t² + 2θt − 1 = 0.
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (theta * theta + 1.0).sqrt())
                    } else {
                        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;

                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let arp = a[r * n + p];
                        let arq = a[r * n + q];
                        let new_rp = c * arp - s * arq;
                        let new_rq = s * arp + c * arq;
                        a[r * n + p] = new_rp;
                        a[p * n + r] = new_rp;
                        a[r * n + q] = new_rq;
                        a[q * n + r] = new_rq;
                    }
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = c * vrp - s * vrq;
                        v[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
        if !converged {
            let mut off_max = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off_max = off_max.max(a[p * n + q].abs());
                }
            }
            if off_max > stop_tol {
                return Err(Error::EigenConvergence { remaining: off_max });
            }
        }
    }

    // Extract pairs, canonicalize signs, order deterministically.
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + j]).collect();
            canonicalize_sign(&mut col);
            (a[j * n + j], col)
        })
        .collect();
    pairs.sort_by(order_pairs);

    let eigenvalues: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
    let eigenvectors: Vec<StateVector> = pairs
        .into_iter()
        .map(|(_, col)| StateVector::try_unit(col))
        .collect::<Result<_>>()?;

    validate(op, &eigenvalues, &eigenvectors)?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Spectral norm (largest absolute eigenvalue).
pub fn spectral_norm(op: &HermitianOperator) -> Result<f64> {
    let s = eigendecompose(op)?;
    let first = s.eigenvalues[0].abs();
    let last = s.eigenvalues[s.dim() - 1].abs();
    Ok(first.max(last))
}

fn canonicalize_sign(col: &mut [f64]) {
    // Clear negative zeros so downstream formatting and comparisons are stable.
    for x in col.iter_mut() {
        if *x == 0.0 {
            *x = 0.0;
        }
    }
    if let Some(&lead) = col.iter().find(|x| **x != 0.0) {
        if lead < 0.0 {
            for x in col.iter_mut() {
                *x = if *x == 0.0 { 0.0 } else { -*x };
            }
        }
    }
}

fn order_pairs(x: &(f64, Vec<f64>), y: &(f64, Vec<f64>)) -> Ordering {
    // Eigenvalues descending; exact ties broken by descending lexicographic
    // comparison of the sign-canonical components.
    match y.0.partial_cmp(&x.0).expect("finite eigenvalues") {
        Ordering::Equal => lex_desc(&x.1, &y.1),
        ord => ord,
    }
}

fn lex_desc(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.partial_cmp(x).expect("finite components") {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn max_gram_deviation(vectors: &[StateVector]) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let g = vectors[i].dot(&vectors[j]).unwrap_or(f64::INFINITY);
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((g - target).abs());
        }
    }
    dev
}

fn validate(
    op: &HermitianOperator,
    eigenvalues: &[f64],
    eigenvectors: &[StateVector],
) -> Result<()> {
    let deviation = max_gram_deviation(eigenvectors);
    if deviation > ORTHONORMALITY_TOL {
        return Err(Error::SpectralValidation {
            check: "orthonormality",
            deviation,
        });
    }
    let n = op.dim();
    let budget = RECONSTRUCTION_TOL * op.max_abs_entry().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let mut r = 0.0;
            for (k, &lambda) in eigenvalues.iter().enumerate() {
                r += lambda * eigenvectors[k].component(i) * eigenvectors[k].component(j);
            }
            worst = worst.max((r - op.entry(i, j)).abs());
        }
    }
    if worst > budget {
        return Err(Error::SpectralValidation {
            check: "reconstruction",
            deviation: worst,
        });
    }
    Ok(())
}
