//! Rank-k subspace extraction by repeated filtering with deflation.
//!
//! The single-vector iteration only recovers one direction; for a rank-k
//! subspace each converged direction v is projected out of the operator,
//! `ρ ← (I − vvᵀ) ρ (I − vvᵀ)`, and the run repeats on the deflated
//! operator. The collected directions are re-orthonormalized at the end so
//! the result always satisfies the projector contract.

use fspa_core::{fspa_run, HermitianOperator, StateVector, Termination};
use rand_chacha::ChaCha8Rng;

use crate::error::{HarnessError, Result};
use crate::generate::random_unit_state;

/// Extracts `k` dominant directions of `rho` (which must satisfy the filter
/// norm bound), each from a seeded warm start and a full `rounds` schedule.
pub fn fspa_top_k(
    rho: &HermitianOperator,
    k: usize,
    rounds: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<StateVector>> {
    if k == 0 || k > rho.dim() {
        return Err(HarnessError::InvalidConfig(format!(
            "requested rank {k} out of range for dimension {}",
            rho.dim()
        )));
    }
    let mut current = rho.clone();
    let mut directions: Vec<StateVector> = Vec::with_capacity(k);
    for extracted in 0..k {
        let phi0 = random_unit_state(rho.dim(), rng);
        let trace = fspa_run(&current, &phi0, rounds, None)?;
        if trace.termination() == Termination::KernelAnnihilation {
            return Err(HarnessError::DeflationRankExceeded { extracted });
        }
        let v = trace.final_state().clone();
        current = deflate(&current, &v)?;
        directions.push(v);
    }
    orthonormalize(&mut directions)?;
    Ok(directions)
}

/// `(I − vvᵀ) A (I − vvᵀ)`, built from the upper triangle so the result is
/// exactly symmetric.
pub fn deflate(a: &HermitianOperator, v: &StateVector) -> Result<HermitianOperator> {
    let n = a.dim();
    let w = a.matvec(v.amplitudes());
    let q: f64 = v.amplitudes().iter().zip(&w).map(|(x, y)| x * y).sum();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let vi = v.component(i);
        let wi = w[i];
        for j in i..n {
            let vj = v.component(j);
            let value = a.entry(i, j) - vi * w[j] - wi * vj + q * vi * vj;
            entries[i * n + j] = value;
            entries[j * n + i] = value;
        }
    }
    HermitianOperator::from_entries(n, entries).map_err(HarnessError::Core)
}

fn orthonormalize(vectors: &mut [StateVector]) -> Result<()> {
    let mut clean: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors.iter() {
        let mut raw = v.amplitudes().to_vec();
        for _ in 0..2 {
            for prev in &clean {
                let dot: f64 = prev.iter().zip(&raw).map(|(a, b)| a * b).sum();
                for (r, p) in raw.iter_mut().zip(prev) {
                    *r -= dot * p;
                }
            }
        }
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return Err(HarnessError::DeflationRankExceeded {
                extracted: clean.len(),
            });
        }
        for r in raw.iter_mut() {
            *r /= norm;
        }
        clean.push(raw);
    }
    for (v, raw) in vectors.iter_mut().zip(clean) {
        *v = StateVector::try_unit(raw).map_err(HarnessError::Core)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::scenario_rng;
    use fspa_core::{eigendecompose, subspace_distance, SubspaceProjector};

    #[test]
    fn recovers_the_exact_top_two_of_a_diagonal() {
        let rho = HermitianOperator::diagonal(&[1.0, 0.6, 0.2, 0.05]).unwrap();
        let mut rng = scenario_rng(13, 0);
        let basis = fspa_top_k(&rho, 2, 10, &mut rng).unwrap();
        let found = SubspaceProjector::try_new(basis).unwrap();
        let exact = eigendecompose(&rho)
            .unwrap()
            .principal_projector(2)
            .unwrap();
        assert!(subspace_distance(&found, &exact).unwrap() <= 1e-9);
    }

    #[test]
    fn deflation_removes_the_direction() {
        let rho = HermitianOperator::diagonal(&[1.0, 0.5]).unwrap();
        let e1 = StateVector::basis(2, 0).unwrap();
        let deflated = deflate(&rho, &e1).unwrap();
        assert_eq!(deflated.entry(0, 0), 0.0);
        assert_eq!(deflated.entry(1, 1), 0.5);
    }

    #[test]
    fn rank_beyond_support_is_reported() {
        // Rank-one operator: the second extraction finds an annihilated
        // iterate almost surely.
        let rho = HermitianOperator::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        let mut rng = scenario_rng(21, 0);
        let result = fspa_top_k(&rho, 3, 8, &mut rng);
        assert!(matches!(
            result,
            Err(HarnessError::DeflationRankExceeded { .. })
        ));
    }
}
