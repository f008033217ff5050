//! Seeded generation of operators, perturbations, and synthetic datasets.
//!
//! Every random stream is derived from `(scenario seed, stream index)`, so
//! grid points are independent of each other and of execution order.

use fspa_core::{
    DataMatrix, HermitianOperator, Result as CoreResult, StateVector, SubspaceProjector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{HarnessError, Result};

/// ChaCha stream for one grid point of one scenario.
pub fn scenario_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Eigenvalue list, optionally conjugated away from the standard basis.
#[derive(Debug, Clone)]
pub struct SpectrumSpec {
    pub eigenvalues: Vec<f64>,
    /// Size of the leading degenerate block, validated when given.
    pub degenerate_rank: Option<usize>,
    /// Conjugate by a seeded random orthogonal matrix.
    pub conjugate: bool,
}

impl SpectrumSpec {
    pub fn diagonal(eigenvalues: Vec<f64>) -> Self {
        Self {
            eigenvalues,
            degenerate_rank: None,
            conjugate: false,
        }
    }

    pub fn conjugated(eigenvalues: Vec<f64>) -> Self {
        Self {
            eigenvalues,
            degenerate_rank: None,
            conjugate: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let e = &self.eigenvalues;
        if e.is_empty() {
            return Err(HarnessError::InvalidConfig(
                "spectrum needs at least one eigenvalue".into(),
            ));
        }
        if e.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(HarnessError::InvalidConfig(
                "eigenvalues must be finite and nonnegative".into(),
            ));
        }
        if e.windows(2).any(|w| w[1] > w[0]) {
            return Err(HarnessError::InvalidConfig(
                "eigenvalues must be nonincreasing".into(),
            ));
        }
        if let Some(r) = self.degenerate_rank {
            if r == 0 || r > e.len() {
                return Err(HarnessError::InvalidConfig(format!(
                    "degenerate rank {r} out of range"
                )));
            }
            if e[..r].iter().any(|l| *l != e[0]) {
                return Err(HarnessError::InvalidConfig(
                    "leading block is not exactly degenerate".into(),
                ));
            }
            if r < e.len() && e[r] >= e[0] {
                return Err(HarnessError::InvalidConfig(
                    "degenerate block does not dominate the rest".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Eigenvalues `1, r, r·t, r·t², …` — the leading ratio is exactly `r` and
/// the tail decays geometrically below it.
pub fn geometric_spectrum(dim: usize, ratio: f64, tail_ratio: f64) -> Vec<f64> {
    let mut values = Vec::with_capacity(dim);
    values.push(1.0);
    let mut v = ratio;
    for _ in 1..dim {
        values.push(v);
        v *= tail_ratio;
    }
    values
}

/// Realizes a spectrum spec as an operator, conjugating by a seeded random
/// orthogonal matrix when requested.
pub fn gen_spectrum(spec: &SpectrumSpec, rng: &mut ChaCha8Rng) -> Result<HermitianOperator> {
    spec.validate()?;
    let diag = HermitianOperator::diagonal(&spec.eigenvalues).map_err(HarnessError::Core)?;
    if !spec.conjugate {
        return Ok(diag);
    }
    let n = spec.eigenvalues.len();
    let q = random_orthogonal(n, rng);
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut h = 0.0;
            for (k, &lambda) in spec.eigenvalues.iter().enumerate() {
                h += q[i * n + k] * lambda * q[j * n + k];
            }
            entries[i * n + j] = h;
            entries[j * n + i] = h;
        }
    }
    HermitianOperator::from_entries(n, entries).map_err(HarnessError::Core)
}

/// Random orthogonal matrix from Gram-Schmidt on a Gaussian matrix; the
/// triangular factor's diagonal comes out positive, which pins the sign
/// convention.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut q = vec![0.0; n * n]; // columns are the orthonormal vectors
    for j in 0..n {
        loop {
            let mut col: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            // Two orthogonalization passes keep the basis clean at any dim.
            for _ in 0..2 {
                for prev in 0..j {
                    let dot: f64 = (0..n).map(|r| q[r * n + prev] * col[r]).sum();
                    for (r, c) in col.iter_mut().enumerate() {
                        *c -= dot * q[r * n + prev];
                    }
                }
            }
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for (r, c) in col.iter().enumerate() {
                    q[r * n + j] = c / norm;
                }
                break;
            }
        }
    }
    q
}

/// A seeded unit vector.
pub fn random_unit_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let raw: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(v) = StateVector::normalized(&raw) {
            return v;
        }
    }
}

/// A seeded unit vector inside the span of a projector's basis.
pub fn random_unit_in_subspace(
    projector: &SubspaceProjector,
    rng: &mut ChaCha8Rng,
) -> StateVector {
    let dim = projector.dim();
    loop {
        let mut raw = vec![0.0; dim];
        for b in projector.basis() {
            let c: f64 = rng.sample(StandardNormal);
            for (r, x) in raw.iter_mut().enumerate() {
                *x += c * b.component(r);
            }
        }
        if let Ok(v) = StateVector::normalized(&raw) {
            return v;
        }
    }
}

/// How an operator is perturbed.
#[derive(Debug, Clone)]
pub enum PerturbMode {
    /// `H + strength · ‖H‖₂ · D` with `D` a unit-spectral-norm symmetrized
    /// Gaussian direction.
    SymmetricGaussian,
    /// `H + strength · v vᵀ` with a seeded unit `v` inside the subspace —
    /// positive semidefinite by construction.
    PsdInSubspace(SubspaceProjector),
}

/// Applies a seeded perturbation; strength zero returns the operator as is.
pub fn perturb_operator(
    h: &HermitianOperator,
    strength: f64,
    mode: &PerturbMode,
    rng: &mut ChaCha8Rng,
) -> Result<HermitianOperator> {
    if !(strength.is_finite() && strength >= 0.0) {
        return Err(HarnessError::InvalidConfig(format!(
            "perturbation strength must be nonnegative, got {strength}"
        )));
    }
    if strength == 0.0 {
        return Ok(h.clone());
    }
    match mode {
        PerturbMode::SymmetricGaussian => {
            let n = h.dim();
            let mut direction = vec![0.0; n * n];
            let g: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
            for i in 0..n {
                for j in i..n {
                    let s = 0.5 * (g[i * n + j] + g[j * n + i]);
                    direction[i * n + j] = s;
                    direction[j * n + i] = s;
                }
            }
            let direction = HermitianOperator::from_entries(n, direction)?;
            let dir_norm = fspa_core::spectral_norm(&direction)?;
            let h_norm = fspa_core::spectral_norm(h)?;
            let unit = direction.scaled(1.0 / dir_norm)?;
            Ok(h.add_scaled(&unit, strength * h_norm)?)
        }
        PerturbMode::PsdInSubspace(projector) => {
            if projector.dim() != h.dim() {
                return Err(HarnessError::Core(fspa_core::Error::DimensionMismatch {
                    left: h.dim(),
                    right: projector.dim(),
                }));
            }
            let v = random_unit_in_subspace(projector, rng);
            let lift = HermitianOperator::rank_one(v.amplitudes())?;
            Ok(h.add_scaled(&lift, strength)?)
        }
    }
}

/// Gaussian dataset with independent N(0,1) entries.
pub fn random_dataset(
    n_samples: usize,
    n_features: usize,
    rng: &mut ChaCha8Rng,
) -> CoreResult<DataMatrix> {
    let values: Vec<f64> = (0..n_samples * n_features)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    Ok(DataMatrix::new(n_samples, n_features, values, None)
        .expect("generated dataset is well-formed"))
}

/// Labeled Gaussian blobs whose class means live in the span of the first
/// two feature axes, giving the covariance a controlled dominant plane.
pub fn labeled_blobs(
    n_samples: usize,
    n_features: usize,
    n_classes: usize,
    spread: f64,
    noise: f64,
    rng: &mut ChaCha8Rng,
) -> Result<DataMatrix> {
    if n_features < 2 || n_classes < 2 || n_samples < 2 * n_classes {
        return Err(HarnessError::InvalidConfig(
            "blobs need at least 2 features, 2 classes, and 2 samples per class".into(),
        ));
    }
    let mut values = Vec::with_capacity(n_samples * n_features);
    let mut labels = Vec::with_capacity(n_samples);
    let base = n_samples / n_classes;
    let extra = n_samples % n_classes;
    for class in 0..n_classes {
        let count = base + usize::from(class < extra);
        let angle = std::f64::consts::TAU * class as f64 / n_classes as f64;
        // Distinct radii keep the two leading covariance eigenvalues apart.
        let radius = spread * (1.0 - 0.2 * class as f64 / n_classes as f64);
        let mean = (radius * angle.cos(), radius * angle.sin());
        for _ in 0..count {
            for f in 0..n_features {
                let center = match f {
                    0 => mean.0,
                    1 => mean.1,
                    _ => 0.0,
                };
                let g: f64 = rng.sample(StandardNormal);
                values.push(center + noise * g);
            }
            labels.push(class as i64);
        }
    }
    DataMatrix::new(n_samples, n_features, values, Some(labels)).map_err(HarnessError::Data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugated_spectrum_round_trips() {
        let spec = SpectrumSpec::conjugated(vec![1.0, 0.5, 0.25, 0.1]);
        let mut rng = scenario_rng(7, 0);
        let op = gen_spectrum(&spec, &mut rng).unwrap();
        let s = fspa_core::eigendecompose(&op).unwrap();
        for (got, want) in s.eigenvalues().iter().zip(&spec.eigenvalues) {
            assert!((got - want).abs() <= 1e-10);
        }
    }

    #[test]
    fn degenerate_block_generation() {
        let spec = SpectrumSpec {
            eigenvalues: vec![1.0, 1.0, 0.2],
            degenerate_rank: Some(2),
            conjugate: false,
        };
        let mut rng = scenario_rng(7, 0);
        let op = gen_spectrum(&spec, &mut rng).unwrap();
        assert_eq!(op.entry(0, 0), 1.0);
        assert_eq!(op.entry(1, 1), 1.0);
        assert_eq!(op.entry(2, 2), 0.2);
    }

    #[test]
    fn gaussian_perturbation_has_calibrated_size() {
        let spec = SpectrumSpec::conjugated(vec![1.0, 0.6, 0.3]);
        let mut rng = scenario_rng(11, 0);
        let h = gen_spectrum(&spec, &mut rng).unwrap();
        let strength = 0.05;
        let perturbed =
            perturb_operator(&h, strength, &PerturbMode::SymmetricGaussian, &mut rng).unwrap();
        let delta = perturbed.add_scaled(&h, -1.0).unwrap();
        let h_norm = fspa_core::spectral_norm(&h).unwrap();
        let d_norm = fspa_core::spectral_norm(&delta).unwrap();
        assert!((d_norm - strength * h_norm).abs() <= 1e-9);
        // Zero strength leaves the operator untouched.
        let same = perturb_operator(&h, 0.0, &PerturbMode::SymmetricGaussian, &mut rng).unwrap();
        assert_eq!(same.entries(), h.entries());
    }

    #[test]
    fn axis_aligned_psd_lift() {
        let h = HermitianOperator::diagonal(&[1.0, 1.0, 0.2]).unwrap();
        let p = SubspaceProjector::from_basis_indices(3, &[0]).unwrap();
        let mut rng = scenario_rng(3, 0);
        let lifted = perturb_operator(&h, 0.01, &PerturbMode::PsdInSubspace(p), &mut rng).unwrap();
        // Inside span{e1} the drawn unit vector is ±e1, and the lift is the
        // same either way.
        assert!((lifted.entry(0, 0) - 1.01).abs() <= 1e-15);
        assert_eq!(lifted.entry(1, 1), 1.0);
        assert_eq!(lifted.entry(2, 2), 0.2);
        assert_eq!(lifted.entry(0, 1), 0.0);
    }

    #[test]
    fn streams_are_independent() {
        let a: f64 = scenario_rng(1, 0).sample(StandardNormal);
        let b: f64 = scenario_rng(1, 1).sample(StandardNormal);
        let a_again: f64 = scenario_rng(1, 0).sample(StandardNormal);
        assert_eq!(a, a_again);
        assert_ne!(a, b);
    }

    #[test]
    fn blobs_are_labeled_and_separated() {
        let mut rng = scenario_rng(5, 0);
        let data = labeled_blobs(30, 4, 3, 5.0, 0.2, &mut rng).unwrap();
        assert_eq!(data.n_samples(), 30);
        let labels = data.labels().unwrap();
        assert!(labels.contains(&2));
    }
}
