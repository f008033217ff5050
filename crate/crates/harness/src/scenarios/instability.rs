//! Eigenvector instability versus dominant-subspace stability under small
//! symmetric perturbations of a near-degenerate covariance.

use fspa_core::{
    covariance, eigendecompose, eigenvector_rotation, load_csv, standardize, subspace_distance,
    HermitianOperator,
};

use crate::config::InstabilityParams;
use crate::error::{HarnessError, Result};
use crate::generate::{gen_spectrum, perturb_operator, scenario_rng, PerturbMode, SpectrumSpec};
use crate::result::{Cell, ScenarioResult};

pub const COLUMNS: [&str; 5] = [
    "strength",
    "seed_index",
    "eigenvector_rotation_1",
    "eigenvector_rotation_2",
    "subspace_distance",
];

pub fn run(p: &InstabilityParams) -> Result<ScenarioResult> {
    if p.n_seeds == 0 || p.strengths.is_empty() {
        return Err(HarnessError::InvalidConfig(
            "need at least one strength and one seed".into(),
        ));
    }

    let base = base_operator(p)?;
    if p.subspace_rank == 0 || p.subspace_rank > base.dim() {
        return Err(HarnessError::InvalidConfig(format!(
            "subspace_rank {} out of range for dimension {}",
            p.subspace_rank,
            base.dim()
        )));
    }
    let base_spectrum = eigendecompose(&base)?;
    let base_projector = base_spectrum.principal_projector(p.subspace_rank)?;

    let mut result = ScenarioResult::new("instability", COLUMNS.to_vec());
    result.push_caveat(
        "rotation metric is 1 minus the squared overlap of index-matched eigenvectors (a convention of this toolkit)",
    );
    result.push_caveat(
        "perturbations are symmetric Gaussian directions scaled to strength times the operator spectral norm",
    );

    for (si, &strength) in p.strengths.iter().enumerate() {
        for seed_index in 0..p.n_seeds {
            // Stream 0 generated the base operator; grid points start at 1.
            let stream = 1 + (si * p.n_seeds + seed_index) as u64;
            let mut rng = scenario_rng(p.seed, stream);
            let perturbed =
                perturb_operator(&base, strength, &PerturbMode::SymmetricGaussian, &mut rng)?;
            let spectrum = eigendecompose(&perturbed)?;
            let projector = spectrum.principal_projector(p.subspace_rank)?;
            result.push_row(vec![
                Cell::Float(strength),
                Cell::Int(seed_index as i64),
                Cell::Float(eigenvector_rotation(&base_spectrum, &spectrum, 0)?),
                Cell::Float(eigenvector_rotation(&base_spectrum, &spectrum, 1)?),
                Cell::Float(subspace_distance(&base_projector, &projector)?),
            ]);
        }
    }
    Ok(result)
}

fn base_operator(p: &InstabilityParams) -> Result<HermitianOperator> {
    match &p.dataset_csv {
        Some(path) => {
            let raw = load_csv(std::path::Path::new(path), p.label_column.as_deref())?;
            let features = if p.standardize {
                standardize(&raw)?
            } else {
                raw
            };
            Ok(covariance(&features, true))
        }
        None => {
            let spec = SpectrumSpec {
                eigenvalues: p.eigenvalues.clone(),
                degenerate_rank: None,
                conjugate: p.conjugate,
            };
            let mut rng = scenario_rng(p.seed, 0);
            gen_spectrum(&spec, &mut rng)
        }
    }
}
