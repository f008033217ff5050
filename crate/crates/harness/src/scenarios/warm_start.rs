//! Warm-start amplification at small gap: any nonzero initial overlap is
//! amplified monotonically, and an exactly zero overlap stays zero — the
//! filter never invents bias.

use fspa_core::{analytic_fidelity, eigendecompose, fspa_run, HermitianOperator, StateVector};

use crate::config::WarmStartParams;
use crate::error::{HarnessError, Result};
use crate::generate::geometric_spectrum;
use crate::result::{Cell, ScenarioResult};

pub const COLUMNS: [&str; 3] = ["overlap", "oracle_count", "fidelity"];

pub fn run(p: &WarmStartParams) -> Result<ScenarioResult> {
    if p.dim < 2 {
        return Err(HarnessError::InvalidConfig("dim must be at least 2".into()));
    }
    if !(p.ratio > 0.0 && p.ratio < 1.0) {
        return Err(HarnessError::InvalidConfig(
            "ratio must lie in (0, 1)".into(),
        ));
    }
    if p.overlap_grid.is_empty() || p.overlap_grid.iter().any(|o| !(0.0..1.0).contains(o)) {
        return Err(HarnessError::InvalidConfig(
            "overlap grid values must lie in [0, 1)".into(),
        ));
    }

    let eigenvalues = geometric_spectrum(p.dim, p.ratio, p.tail_ratio);
    let rho = HermitianOperator::diagonal(&eigenvalues).map_err(HarnessError::Core)?;
    let spectrum = eigendecompose(&rho)?;
    let top = StateVector::basis(p.dim, 0).map_err(HarnessError::Core)?;

    let mut result = ScenarioResult::new("warm_start", COLUMNS.to_vec());
    result.push_caveat(
        "the operator is diagonal so the zero-overlap component is exactly representable; fidelity is recorded after every application",
    );

    for &overlap in &p.overlap_grid {
        let phi0 = warm_start_state(p.dim, overlap)?;
        let trace = fspa_run(&rho, &phi0, p.rounds, None)?;
        for step in trace.steps() {
            let fidelity = step.state.overlap_fidelity(&top)?;
            if overlap == 0.0 {
                if fidelity != 0.0 {
                    return Err(HarnessError::InvariantViolated(format!(
                        "zero warm start acquired fidelity {fidelity} at count {}",
                        step.oracle_count
                    )));
                }
            } else {
                // Diagonal, non-degenerate top: the closed form applies.
                let expected =
                    analytic_fidelity(&spectrum, phi0.amplitudes(), step.oracle_count as u32)?;
                if (fidelity - expected).abs() > 1e-9 {
                    return Err(HarnessError::InvariantViolated(format!(
                        "fidelity {fidelity} deviates from closed form {expected} at overlap {overlap}, count {}",
                        step.oracle_count
                    )));
                }
            }
            result.push_row(vec![
                Cell::Float(overlap),
                Cell::Int(step.oracle_count as i64),
                Cell::Float(fidelity),
            ]);
        }
    }
    Ok(result)
}

/// `a₁ = √overlap` exactly (so 0 stays 0), remainder spread uniformly.
fn warm_start_state(dim: usize, overlap: f64) -> Result<StateVector> {
    let rest = ((1.0 - overlap) / (dim - 1) as f64).sqrt();
    let mut raw = vec![rest; dim];
    raw[0] = overlap.sqrt();
    StateVector::normalized(&raw).map_err(HarnessError::Core)
}
