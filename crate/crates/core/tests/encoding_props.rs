//! Properties of the classical-data layer: the rank-one covariance relation,
//! interlacing, and the density/covariance coincidence on centered data.

use fspa_core::{
    covariance, ensemble_density, interlacing_check, DataMatrix, HermitianOperator, Weighting,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_dataset(n: usize, d: usize, rng: &mut ChaCha8Rng) -> DataMatrix {
    let values: Vec<f64> = (0..n * d).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
    DataMatrix::new(n, d, values, None).unwrap()
}

fn centered_copy(x: &DataMatrix) -> DataMatrix {
    let means = x.column_means();
    let d = x.n_features();
    let mut values = Vec::with_capacity(x.n_samples() * d);
    for i in 0..x.n_samples() {
        for (j, &v) in x.row(i).iter().enumerate() {
            values.push(v - means[j]);
        }
    }
    DataMatrix::new(x.n_samples(), d, values, None).unwrap()
}

#[test]
fn uncentered_minus_centered_is_the_mean_outer_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    for _ in 0..50 {
        let n = rng.random_range(2..40);
        let d = rng.random_range(1..10);
        let x = random_dataset(n, d, &mut rng);
        let c = covariance(&x, true);
        let s = covariance(&x, false);
        let mu = HermitianOperator::rank_one(&x.column_means()).unwrap();
        let recomposed = c.add_scaled(&mu, 1.0).unwrap();
        assert!(recomposed.max_abs_diff(&s).unwrap() <= 1e-12);
    }
}

#[test]
fn interlacing_holds_on_random_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    for _ in 0..200 {
        let n = rng.random_range(2..30);
        let d = rng.random_range(1..=16);
        let x = random_dataset(n, d, &mut rng);
        let report = interlacing_check(&x).unwrap();
        assert!(report.pass, "interlacing failed on an {n}x{d} dataset");
    }
}

#[test]
fn density_operators_are_unit_trace_and_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(161);
    for weighting in [Weighting::Uniform, Weighting::NormWeighted] {
        for _ in 0..25 {
            let n = rng.random_range(2..25);
            let d = rng.random_range(1..8);
            let x = random_dataset(n, d, &mut rng);
            let rho = ensemble_density(&x, weighting).unwrap();
            assert!((rho.trace() - 1.0).abs() <= 1e-12);
            let spectrum = fspa_core::eigendecompose(&rho).unwrap();
            assert!(spectrum.eigenvalues().iter().all(|l| *l >= -1e-12));
        }
    }
}

#[test]
fn norm_weighted_density_coincides_with_covariance_on_centered_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    for _ in 0..50 {
        let n = rng.random_range(3..30);
        let d = rng.random_range(1..=16);
        let x = centered_copy(&random_dataset(n, d, &mut rng));
        let rho = ensemble_density(&x, Weighting::NormWeighted).unwrap();
        let c = covariance(&x, true);
        let expected = c.scaled(1.0 / c.trace()).unwrap();
        assert!(rho.max_abs_diff(&expected).unwrap() <= 1e-12);
    }
}
