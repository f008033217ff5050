//! Perturbative degeneracy lifting: a PSD rank-one lift inside a degenerate
//! leading block selects one direction, which the filter then recovers; with
//! no lift the iterate converges to the block without breaking symmetry.

use fspa_core::{fspa_run, spectral_norm, HermitianOperator, StateVector, SubspaceProjector};

use crate::config::DegeneracyLiftingParams;
use crate::error::{HarnessError, Result};
use crate::generate::{gen_spectrum, random_unit_in_subspace, scenario_rng, SpectrumSpec};
use crate::result::{format_float, Cell, ScenarioResult};

pub const COLUMNS: [&str; 5] = [
    "delta",
    "oracle_count",
    "fidelity_to_direction",
    "fidelity_to_subspace",
    "ratio_drift",
];

pub fn run(p: &DegeneracyLiftingParams) -> Result<ScenarioResult> {
    let spec = SpectrumSpec {
        eigenvalues: p.eigenvalues.clone(),
        degenerate_rank: Some(p.degenerate_rank),
        conjugate: false,
    };
    spec.validate()?;
    if p.degenerate_rank < 2 {
        return Err(HarnessError::InvalidConfig(
            "degenerate block must have rank at least 2".into(),
        ));
    }
    if p.delta_grid.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
        return Err(HarnessError::InvalidConfig(
            "lift strengths must be nonnegative".into(),
        ));
    }

    let dim = p.eigenvalues.len();
    let mut rng = scenario_rng(p.seed, 0);
    let base = gen_spectrum(&spec, &mut rng)?;
    let block =
        SubspaceProjector::from_basis_indices(dim, &(0..p.degenerate_rank).collect::<Vec<_>>())
            .map_err(HarnessError::Core)?;
    // One shared lift direction across the whole delta grid keeps the rows
    // comparable; at delta = 0 it only serves as the measurement reference.
    let mut direction_rng = scenario_rng(p.seed, 1);
    let direction = random_unit_in_subspace(&block, &mut direction_rng);
    let lift = HermitianOperator::rank_one(direction.amplitudes()).map_err(HarnessError::Core)?;
    let phi0 = StateVector::normalized(&vec![1.0; dim]).map_err(HarnessError::Core)?;

    let mut result = ScenarioResult::new("degeneracy_lifting", COLUMNS.to_vec());
    result.push_caveat(
        "operators with spectral norm above 1 are rescaled by 1/lambda_max before filtering; normalized iterates are unchanged by that rescaling",
    );
    result.push_caveat(
        "ratio_drift tracks the first two block components' ratio against its initial value and is only reported for delta = 0",
    );

    for (di, &delta) in p.delta_grid.iter().enumerate() {
        let lifted = if delta == 0.0 {
            base.clone()
        } else {
            base.add_scaled(&lift, delta).map_err(HarnessError::Core)?
        };

        // Satisfy the filter's norm bound without changing the iterates.
        let norm = spectral_norm(&lifted)?;
        let rho = if norm > 1.0 {
            lifted.scaled(1.0 / norm).map_err(HarnessError::Core)?
        } else {
            lifted
        };

        let trace = fspa_run(&rho, &phi0, p.rounds, None)?;
        let ratio0 = phi0.component(0) / phi0.component(1);
        for step in trace.steps() {
            let fid_v = step.state.overlap_fidelity(&direction)?;
            let fid_s = block.subspace_fidelity(&step.state)?;
            let drift = if delta == 0.0 {
                Cell::Float((step.state.component(0) / step.state.component(1) - ratio0).abs())
            } else {
                Cell::Empty
            };
            result.push_row(vec![
                Cell::Float(delta),
                Cell::Int(step.oracle_count as i64),
                Cell::Float(fid_v),
                Cell::Float(fid_s),
                drift,
            ]);
        }
        result.push_summary(
            &format!("final_fidelity_to_direction_{di}"),
            format_float(trace.final_state().overlap_fidelity(&direction)?),
        );
    }
    Ok(result)
}
