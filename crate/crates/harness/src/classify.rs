//! Deterministic split and nearest-centroid classification for the
//! downstream projection diagnostic.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone)]
pub struct Split {
    /// Training row indices, ascending.
    pub train: Vec<usize>,
    /// Test row indices, ascending.
    pub test: Vec<usize>,
}

/// Stratified split: within each label group (visited in ascending label
/// order) the rows are shuffled with the given stream and
/// `round(fraction · n)` of them go to training, keeping at least one row on
/// each side whenever the group has two or more.
pub fn stratified_split(labels: &[i64], train_fraction: f64, rng: &mut ChaCha8Rng) -> Result<Split> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(HarnessError::InvalidConfig(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut by_label: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (_, mut rows) in by_label {
        rows.shuffle(rng);
        let n = rows.len();
        let mut take = (n as f64 * train_fraction).round() as usize;
        if n >= 2 {
            take = take.clamp(1, n - 1);
        } else {
            take = n;
        }
        train.extend_from_slice(&rows[..take]);
        test.extend_from_slice(&rows[take..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(Split { train, test })
}

/// Per-class mean points in some projected coordinate space.
#[derive(Debug, Clone)]
pub struct NearestCentroid {
    centroids: Vec<(i64, Vec<f64>)>,
}

impl NearestCentroid {
    pub fn fit(points: &[Vec<f64>], labels: &[i64]) -> Result<Self> {
        if points.len() != labels.len() || points.is_empty() {
            return Err(HarnessError::InvalidConfig(
                "classifier needs matching, nonempty points and labels".into(),
            ));
        }
        let dim = points[0].len();
        let mut sums: BTreeMap<i64, (Vec<f64>, usize)> = BTreeMap::new();
        for (p, &l) in points.iter().zip(labels) {
            let entry = sums.entry(l).or_insert_with(|| (vec![0.0; dim], 0));
            for (s, v) in entry.0.iter_mut().zip(p) {
                *s += v;
            }
            entry.1 += 1;
        }
        let centroids = sums
            .into_iter()
            .map(|(l, (sum, count))| {
                (l, sum.into_iter().map(|s| s / count as f64).collect())
            })
            .collect();
        Ok(Self { centroids })
    }

    /// Nearest centroid by Euclidean distance; ties go to the lowest label.
    pub fn predict(&self, point: &[f64]) -> i64 {
        let mut best = self.centroids[0].0;
        let mut best_d = f64::INFINITY;
        for (label, centroid) in &self.centroids {
            let d: f64 = centroid
                .iter()
                .zip(point)
                .map(|(c, p)| (c - p) * (c - p))
                .sum();
            if d < best_d {
                best_d = d;
                best = *label;
            }
        }
        best
    }
}

pub fn accuracy(predicted: &[i64], truth: &[i64]) -> f64 {
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    hits as f64 / truth.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::scenario_rng;

    #[test]
    fn split_is_stratified_and_deterministic() {
        let labels: Vec<i64> = (0..30).map(|i| i % 3).collect();
        let mut rng = scenario_rng(9, 1);
        let split = stratified_split(&labels, 0.7, &mut rng).unwrap();
        assert_eq!(split.train.len(), 21);
        assert_eq!(split.test.len(), 9);
        for class in 0..3i64 {
            let n_train = split.train.iter().filter(|&&i| labels[i] == class).count();
            assert_eq!(n_train, 7);
        }
        let mut rng2 = scenario_rng(9, 1);
        let split2 = stratified_split(&labels, 0.7, &mut rng2).unwrap();
        assert_eq!(split.train, split2.train);
        assert_eq!(split.test, split2.test);
    }

    #[test]
    fn centroid_classification() {
        let points = vec![
            vec![0.0, 0.0],
            vec![0.1, -0.1],
            vec![5.0, 5.0],
            vec![4.9, 5.2],
        ];
        let labels = vec![0, 0, 1, 1];
        let model = NearestCentroid::fit(&points, &labels).unwrap();
        assert_eq!(model.predict(&[0.2, 0.1]), 0);
        assert_eq!(model.predict(&[4.0, 4.5]), 1);
        assert_eq!(accuracy(&[0, 1, 1], &[0, 1, 0]), 2.0 / 3.0);
    }
}
