//! k-nearest neighbours with optional inverse-distance vote weighting.

use crate::classifiers::{ClassifierConfig, Prediction};
use crate::datasets::{LabeledTable, Value};

#[derive(Debug, Clone)]
pub struct KnnModel {
    rows: Vec<Vec<Value>>,
    labels: Vec<usize>,
    n_classes: usize,
    k: usize,
    weighted: bool,
    epsilon: f64,
}

/// Euclidean distance over numeric features plus a 0/1 mismatch term per
/// categorical feature, under one square root.
pub fn mixed_distance(a: &[Value], b: &[Value]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Value::Num(u), Value::Num(v)) => (u - v) * (u - v),
            (Value::Cat(u), Value::Cat(v)) => f64::from(u8::from(u != v)),
            _ => 1.0,
        })
        .sum::<f64>()
        .sqrt()
}

impl KnnModel {
    pub(crate) fn fit(config: &ClassifierConfig, data: &LabeledTable) -> Self {
        Self {
            rows: data.rows.clone(),
            labels: data.labels.clone(),
            n_classes: data.n_classes(),
            k: config.k,
            weighted: config.distance_weighted,
            epsilon: config.knn_epsilon,
        }
    }

    pub fn n_stored(&self) -> usize {
        self.rows.len()
    }

    /// Vote fractions among the `k` nearest stored rows. Distance ties are
    /// resolved in favour of the earlier training row.
    pub fn predict(&self, row: &[Value]) -> Prediction {
        let mut dist: Vec<(f64, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (mixed_distance(r, row), i))
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut votes = vec![0.0; self.n_classes];
        for &(d, i) in dist.iter().take(self.k) {
            votes[self.labels[i]] += if self.weighted { 1.0 / (d + self.epsilon) } else { 1.0 };
        }
        let total: f64 = votes.iter().sum();
        Prediction::from_scores(votes.into_iter().map(|v| v / total).collect())
    }
}
