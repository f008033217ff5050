//! Engine behavior checked against the closed-form fidelity oracle and the
//! worst-case application bound.

use fspa_core::{
    analytic_fidelity, eigendecompose, fspa_run, power_iteration_run, spectral_norm,
    theorem_bound, ConvergenceTarget, FilterSchedule, HermitianOperator, StateVector,
    SubspaceProjector, Termination,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_symmetric_contraction(dim: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let mut entries = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v = rng.random::<f64>() * 2.0 - 1.0;
            entries[i * dim + j] = v;
            entries[j * dim + i] = v;
        }
    }
    let raw = HermitianOperator::from_entries(dim, entries).unwrap();
    let norm = spectral_norm(&raw).unwrap();
    raw.scaled(1.0 / (norm * (1.0 + 1e-12))).unwrap()
}

fn random_unit(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let raw: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        if let Ok(v) = StateVector::normalized(&raw) {
            return v;
        }
    }
}

fn descending_positive_spectrum(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut values: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() * 0.9 + 0.05).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

#[test]
fn rescaling_leaves_iterates_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let rho = random_symmetric_contraction(8, &mut rng);
        let phi0 = random_unit(8, &mut rng);
        let base = fspa_run(&rho, &phi0, 6, None).unwrap();
        for c in [1e-6, 1e-3, 0.5] {
            let scaled = fspa_run(&rho.scaled(c).unwrap(), &phi0, 6, None).unwrap();
            assert_eq!(base.steps().len(), scaled.steps().len());
            for (a, b) in base.steps().iter().zip(scaled.steps()) {
                assert_eq!(a.oracle_count, b.oracle_count);
                for (x, y) in a.state.amplitudes().iter().zip(b.state.amplitudes()) {
                    assert!(
                        (x - y).abs() <= 1e-10,
                        "iterates diverged at count {} under c={c}",
                        a.oracle_count
                    );
                }
            }
        }
    }
}

#[test]
fn power_iteration_rescaling_holds_above_unit_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let rho = random_symmetric_contraction(6, &mut rng);
        let phi0 = random_unit(6, &mut rng);
        let base = power_iteration_run(&rho, &phi0, 40, None).unwrap();
        for c in [3.0, 17.5] {
            let scaled = power_iteration_run(&rho.scaled(c).unwrap(), &phi0, 40, None).unwrap();
            for (a, b) in base.steps().iter().zip(scaled.steps()) {
                for (x, y) in a.state.amplitudes().iter().zip(b.state.amplitudes()) {
                    assert!((x - y).abs() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn recorded_fidelity_matches_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let eigenvalues = descending_positive_spectrum(16, &mut rng);
        let rho = HermitianOperator::diagonal(&eigenvalues).unwrap();
        let spectrum = eigendecompose(&rho).unwrap();
        let phi0 = random_unit(16, &mut rng);
        let target = ConvergenceTarget::vector(StateVector::basis(16, 0).unwrap(), 1e-12).unwrap();
        let trace = fspa_run(&rho, &phi0, 9, Some(&target)).unwrap();
        for step in trace.steps() {
            let expected =
                analytic_fidelity(&spectrum, phi0.amplitudes(), step.oracle_count as u32).unwrap();
            let got = step.fidelity.unwrap();
            assert!(
                (got - expected).abs() <= 1e-9,
                "count {}: {got} vs closed form {expected}",
                step.oracle_count
            );
        }
    }
}

#[test]
fn fidelity_is_monotone_when_gapped() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        let mut eigenvalues = descending_positive_spectrum(8, &mut rng);
        eigenvalues[0] = 1.0; // enforce a gap over the rest
        for v in eigenvalues.iter_mut().skip(1) {
            *v *= 0.95;
        }
        let rho = HermitianOperator::diagonal(&eigenvalues).unwrap();
        let phi0 = random_unit(8, &mut rng);
        if phi0.component(0).abs() < 1e-3 {
            continue;
        }
        let target = ConvergenceTarget::vector(StateVector::basis(8, 0).unwrap(), 1e-12).unwrap();
        let trace = fspa_run(&rho, &phi0, 8, Some(&target)).unwrap();
        let mut last = -1.0;
        for step in trace.steps() {
            let f = step.fidelity.unwrap();
            assert!(f >= last - 1e-12, "fidelity dipped at {}", step.oracle_count);
            last = f;
        }
    }
}

#[test]
fn first_passage_never_exceeds_the_bound() {
    let epsilons = [1e-2, 1e-4];
    let overlaps = [0.1, 0.5, 0.9];
    let ratios = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
    for &r in &ratios {
        for &a1_sq in &overlaps {
            for &epsilon in &epsilons {
                let bound = theorem_bound(r, a1_sq, epsilon).unwrap();
                let rho = HermitianOperator::diagonal(&[1.0, r]).unwrap();
                let phi0 =
                    StateVector::try_unit(vec![a1_sq.sqrt(), (1.0 - a1_sq).sqrt()]).unwrap();
                let target =
                    ConvergenceTarget::vector(StateVector::basis(2, 0).unwrap(), epsilon).unwrap();
                let trace = power_iteration_run(&rho, &phi0, bound + 4, Some(&target)).unwrap();
                assert_eq!(trace.termination(), Termination::ToleranceReached);
                assert!(
                    trace.total_applications() <= bound,
                    "passage {} exceeded bound {bound} at r={r}, a1²={a1_sq}, ε={epsilon}",
                    trace.total_applications()
                );
            }
        }
    }
}

#[test]
fn doubling_overshoot_is_at_most_twice_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10 {
        let eigenvalues = descending_positive_spectrum(8, &mut rng);
        let rho = HermitianOperator::diagonal(&eigenvalues).unwrap();
        let norm = spectral_norm(&rho).unwrap();
        let rho = rho.scaled(1.0 / (norm * (1.0 + 1e-12))).unwrap();
        let phi0 = random_unit(8, &mut rng);
        if phi0.component(0).abs() < 0.05 {
            continue;
        }
        let target = ConvergenceTarget::vector(StateVector::basis(8, 0).unwrap(), 1e-4).unwrap();
        let power = power_iteration_run(&rho, &phi0, 4000, Some(&target)).unwrap();
        if power.termination() != Termination::ToleranceReached {
            continue; // gapless draw; nothing to compare
        }
        let k = power.total_applications();
        let fspa = fspa_run(&rho, &phi0, 12, Some(&target)).unwrap();
        assert_eq!(fspa.termination(), Termination::ToleranceReached);
        // Identical updates mean identical early-stopped counts.
        assert_eq!(fspa.total_applications(), k);
        // A run that only checks at round boundaries pays at most 2k + 1.
        let round_complete = FilterSchedule::covering(k).unwrap().total_applications();
        assert!(round_complete <= 2 * k + 1);
    }
}

#[test]
fn zero_bias_is_never_amplified() {
    let rho = HermitianOperator::diagonal(&[1.0, 0.9, 0.3]).unwrap();
    let phi0 = StateVector::try_unit(vec![0.0, 0.8, 0.6]).unwrap();
    let target = ConvergenceTarget::vector(StateVector::basis(3, 0).unwrap(), 1e-9).unwrap();
    let trace = fspa_run(&rho, &phi0, 11, Some(&target)).unwrap();
    assert_eq!(trace.termination(), Termination::ScheduleExhausted);
    assert!(trace.total_applications() >= 1 << 10);
    for step in trace.steps() {
        assert_eq!(step.fidelity, Some(0.0));
    }
}

#[test]
fn degenerate_block_converges_to_the_subspace_without_symmetry_breaking() {
    let rho = HermitianOperator::diagonal(&[1.0, 1.0, 1.0, 0.2, 0.1]).unwrap();
    let phi0 = StateVector::normalized(&[0.3, -0.5, 0.4, 0.5, 0.5]).unwrap();
    let block = SubspaceProjector::from_basis_indices(5, &[0, 1, 2]).unwrap();
    let target = ConvergenceTarget::subspace(block.clone(), 1e-15).unwrap();
    let trace = fspa_run(&rho, &phi0, 8, Some(&target)).unwrap();
    let last = trace.steps().last().unwrap();
    assert!(last.fidelity.unwrap() >= 1.0 - 1e-9);

    // Component ratios inside the degenerate block never drift.
    let r10 = phi0.component(1) / phi0.component(0);
    let r20 = phi0.component(2) / phi0.component(0);
    for step in trace.steps() {
        let s = &step.state;
        assert!((s.component(1) / s.component(0) - r10).abs() <= 1e-10);
        assert!((s.component(2) / s.component(0) - r20).abs() <= 1e-10);
    }
}
