//! Property suites for the linear-algebra substrate.

use fspa_core::{
    eigendecompose, eigenvector_rotation, HermitianOperator, Spectrum, StateVector,
    SubspaceProjector,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_symmetric(dim: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let mut entries = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v = rng.random::<f64>() * 4.0 - 2.0;
            entries[i * dim + j] = v;
            entries[j * dim + i] = v;
        }
    }
    HermitianOperator::from_entries(dim, entries).unwrap()
}

#[test]
fn eigenpair_residuals_stay_small_up_to_dim_64() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for dim in [2usize, 3, 5, 8, 16, 33, 64] {
        for _ in 0..3 {
            let op = random_symmetric(dim, &mut rng);
            let s = eigendecompose(&op).unwrap();
            let budget = 1e-9 * op.max_abs_entry();
            for j in 0..dim {
                let v = s.eigenvector(j).unwrap();
                let hv = op.matvec(v.amplitudes());
                let lambda = s.eigenvalues()[j];
                let res: f64 = hv
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| (a - lambda * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= budget, "dim {dim}, pair {j}: residual {res:e}");
            }
        }
    }
}

#[test]
fn projectors_from_spectra_are_idempotent_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..5 {
        let op = random_symmetric(6, &mut rng);
        let s = eigendecompose(&op).unwrap();
        for k in [1usize, 3, 6] {
            let p = s.principal_projector(k).unwrap().matrix();
            let n = p.dim();
            for i in 0..n {
                for j in 0..n {
                    let mut pp = 0.0;
                    for l in 0..n {
                        pp += p.entry(i, l) * p.entry(l, j);
                    }
                    assert!((pp - p.entry(i, j)).abs() <= 1e-10);
                    assert_eq!(p.entry(i, j), p.entry(j, i));
                }
            }
        }
    }
}

#[test]
fn full_space_projector_sees_every_unit_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let full = SubspaceProjector::from_basis_indices(7, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
    for _ in 0..20 {
        let raw: Vec<f64> = (0..7).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let phi = StateVector::normalized(&raw).unwrap();
        assert!((full.subspace_fidelity(&phi).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn rotation_is_symmetric_and_sign_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..10 {
        let sa = eigendecompose(&random_symmetric(5, &mut rng)).unwrap();
        let sb = eigendecompose(&random_symmetric(5, &mut rng)).unwrap();
        for j in 0..5 {
            let ab = eigenvector_rotation(&sa, &sb, j).unwrap();
            let ba = eigenvector_rotation(&sb, &sa, j).unwrap();
            assert!((ab - ba).abs() <= 1e-12);
        }
        // Flip one eigenvector's sign; the metric must not move.
        let flipped_vectors: Vec<StateVector> = sb
            .eigenvectors()
            .iter()
            .enumerate()
            .map(|(j, v)| {
                if j == 2 {
                    StateVector::try_unit(v.amplitudes().iter().map(|x| -x).collect()).unwrap()
                } else {
                    v.clone()
                }
            })
            .collect();
        let flipped = Spectrum::from_parts(sb.eigenvalues().to_vec(), flipped_vectors).unwrap();
        for j in 0..5 {
            let plain = eigenvector_rotation(&sa, &sb, j).unwrap();
            let signed = eigenvector_rotation(&sa, &flipped, j).unwrap();
            assert!((plain - signed).abs() <= 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn normalize_preserves_direction(raw in proptest::collection::vec(-1e3f64..1e3, 1..12)) {
        prop_assume!(raw.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-6);
        let v = StateVector::normalized(&raw).unwrap();
        prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
        // Direction preserved: raw = ‖raw‖ · v componentwise.
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (r, a) in raw.iter().zip(v.amplitudes()) {
            prop_assert!((r - norm * a).abs() <= 1e-9 * norm.max(1.0));
        }
    }

    #[test]
    fn overlap_is_symmetric_and_bounded(
        a in proptest::collection::vec(-1.0f64..1.0, 4),
        b in proptest::collection::vec(-1.0f64..1.0, 4),
    ) {
        prop_assume!(a.iter().map(|x| x * x).sum::<f64>() > 1e-6);
        prop_assume!(b.iter().map(|x| x * x).sum::<f64>() > 1e-6);
        let va = StateVector::normalized(&a).unwrap();
        let vb = StateVector::normalized(&b).unwrap();
        let f_ab = va.overlap_fidelity(&vb).unwrap();
        let f_ba = vb.overlap_fidelity(&va).unwrap();
        prop_assert_eq!(f_ab, f_ba);
        prop_assert!((0.0..=1.0).contains(&f_ab));
    }
}
