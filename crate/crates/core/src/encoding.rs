//! Covariance matrices, amplitude-encoded ensemble density operators, and
//! the rank-one interlacing check between centered and uncentered spectra.
//!
//! Covariances use the 1/n divisor so that the rank-one relation
//! `S = C + μμᵀ` between the uncentered second-moment matrix and the centered
//! covariance holds exactly; the overall scale is irrelevant to the
//! projection algorithms, which are invariant under spectral rescaling.

use crate::data::{DataError, DataMatrix, DataResult};
use crate::operator::HermitianOperator;
use crate::spectrum::eigendecompose;
use crate::state::ZERO_NORM_THRESHOLD;

/// How ensemble members are weighted when building the density operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every encoded row equally likely: `p_i = 1/n`.
    Uniform,
    /// `p_i = ‖x_i‖² / Σ_j ‖x_j‖²`; makes the density operator proportional
    /// to the second-moment matrix of the data.
    NormWeighted,
}

/// A probability vector over ensemble members (sums to 1 within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleWeights {
    weights: Vec<f64>,
}

impl EnsembleWeights {
    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    /// Weights proportional to squared row norms; rejects zero rows.
    pub fn norm_weighted(x: &DataMatrix) -> DataResult<Self> {
        let norms_sq = row_norms_sq(x)?;
        let total: f64 = norms_sq.iter().sum();
        Ok(Self {
            weights: norms_sq.iter().map(|s| s / total).collect(),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn row_norms_sq(x: &DataMatrix) -> DataResult<Vec<f64>> {
    (0..x.n_samples())
        .map(|i| {
            let s: f64 = x.row(i).iter().map(|v| v * v).sum();
            if s.sqrt() < ZERO_NORM_THRESHOLD {
                Err(DataError::ZeroRow { row: i })
            } else {
                Ok(s)
            }
        })
        .collect()
}

/// Covariance of the dataset with divisor `1/n`.
///
/// `centered` subtracts the column means first; otherwise this is the raw
/// second-moment matrix `S = (1/n) Σ x xᵀ`.
pub fn covariance(x: &DataMatrix, centered: bool) -> HermitianOperator {
    let n = x.n_samples();
    let d = x.n_features();
    let means = if centered {
        x.column_means()
    } else {
        vec![0.0; d]
    };
    let inv_n = 1.0 / n as f64;
    let mut entries = vec![0.0; d * d];
    for s in 0..n {
        let row = x.row(s);
        for i in 0..d {
            let ci = row[i] - means[i];
            for j in i..d {
                entries[i * d + j] += ci * (row[j] - means[j]);
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            let v = entries[i * d + j] * inv_n;
            entries[i * d + j] = v;
            entries[j * d + i] = v;
        }
    }
    HermitianOperator::from_entries(d, entries).expect("covariance is symmetric by construction")
}

/// Amplitude-encodes every row as a unit vector and mixes the resulting pure
/// states: `ρ = Σ_i p_i ψ_i ψ_iᵀ`, a unit-trace PSD operator.
pub fn ensemble_density(x: &DataMatrix, weighting: Weighting) -> DataResult<HermitianOperator> {
    let weights = match weighting {
        Weighting::Uniform => {
            // Zero rows are rejected in either mode: they cannot be encoded.
            row_norms_sq(x)?;
            EnsembleWeights::uniform(x.n_samples())
        }
        Weighting::NormWeighted => EnsembleWeights::norm_weighted(x)?,
    };
    ensemble_density_with_weights(x, &weights)
}

/// Ensemble density operator under explicit weights.
pub fn ensemble_density_with_weights(
    x: &DataMatrix,
    weights: &EnsembleWeights,
) -> DataResult<HermitianOperator> {
    let d = x.n_features();
    let norms_sq = row_norms_sq(x)?;
    let mut entries = vec![0.0; d * d];
    for (s, (&p, &nsq)) in weights.weights().iter().zip(&norms_sq).enumerate() {
        let row = x.row(s);
        let scale = p / nsq;
        for i in 0..d {
            for j in i..d {
                entries[i * d + j] += scale * row[i] * row[j];
            }
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            entries[j * d + i] = entries[i * d + j];
        }
    }
    Ok(HermitianOperator::from_entries(d, entries)
        .expect("density operator is symmetric by construction"))
}

/// Interlacing between centered (μ) and uncentered (ν) covariance spectra
/// under the rank-one relation `S = C + μμᵀ`: `ν_j ≥ μ_j ≥ ν_{j+1}`.
#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub centered_eigenvalues: Vec<f64>,
    pub uncentered_eigenvalues: Vec<f64>,
    /// `ν_j - μ_j` per index; nonnegative when interlacing holds.
    pub upper_slack: Vec<f64>,
    /// `μ_j - ν_{j+1}` per index, with `ν_{d+1} = -∞` (so the last entry is
    /// (+∞).
    pub lower_slack: Vec<f64>,
    pub pass: bool,
    /// `‖mean‖² = trace(S) - trace(C)`, the size of the rank-one deviation.
    pub mean_norm_sq: f64,
}

/// Slack below which an interlacing inequality counts as violated.
pub const INTERLACING_TOL: f64 = 1e-10;

/// Computes centered and uncentered spectra and verifies the rank-one
/// interlacing inequalities within 1e-10 absolute slack.
pub fn interlacing_check(x: &DataMatrix) -> DataResult<InterlacingReport> {
    let centered = covariance(x, true);
    let uncentered = covariance(x, false);
    let mean_norm_sq = uncentered.trace() - centered.trace();
    let mu = eigendecompose(&centered)?.eigenvalues().to_vec();
    let nu = eigendecompose(&uncentered)?.eigenvalues().to_vec();
    let d = mu.len();
    let mut upper_slack = Vec::with_capacity(d);
    let mut lower_slack = Vec::with_capacity(d);
    for j in 0..d {
        upper_slack.push(nu[j] - mu[j]);
        lower_slack.push(if j + 1 < d {
            mu[j] - nu[j + 1]
        } else {
            f64::INFINITY
        });
    }
    let pass = upper_slack
        .iter()
        .chain(lower_slack.iter())
        .all(|s| *s >= -INTERLACING_TOL);
    Ok(InterlacingReport {
        centered_eigenvalues: mu,
        uncentered_eigenvalues: nu,
        upper_slack,
        lower_slack,
        pass,
        mean_norm_sq,
    })
}
