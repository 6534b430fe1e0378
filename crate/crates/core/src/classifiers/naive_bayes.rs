//! Naive Bayes with categorical (frequency) and Gaussian likelihoods.

use crate::classifiers::{ClassifierConfig, Prediction};
use crate::datasets::{FeatureKind, LabeledTable, Value};
use crate::error::Result;

/// Relative variance floor, scaled by the largest per-feature variance.
const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone)]
enum Likelihood {
    /// `log P(level | class)` indexed `[class][level]`.
    Categorical(Vec<Vec<f64>>),
    /// Per-class mean and variance.
    Gaussian { mean: Vec<f64>, var: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct NaiveBayesModel {
    log_prior: Vec<f64>,
    likelihoods: Vec<Likelihood>,
}

impl NaiveBayesModel {
    pub(crate) fn fit(config: &ClassifierConfig, data: &LabeledTable) -> Result<Self> {
        let n = data.n_rows() as f64;
        let n_classes = data.n_classes();
        let counts = data.class_counts();
        let log_prior = counts.iter().map(|&c| (c as f64 / n).ln()).collect();

        let mut likelihoods = Vec::with_capacity(data.n_features());
        let mut max_var: f64 = 0.0;
        for (f, feature) in data.features.iter().enumerate() {
            match feature.kind {
                FeatureKind::Categorical => {
                    let n_levels = feature.levels.len();
                    let mut table = vec![vec![0usize; n_levels]; n_classes];
                    for (row, &label) in data.rows.iter().zip(&data.labels) {
                        if let Value::Cat(v) = row[f] {
                            table[label][v] += 1;
                        }
                    }
                    let logs = table
                        .iter()
                        .zip(&counts)
                        .map(|(per_level, &nc)| {
                            per_level
                                .iter()
                                .map(|&k| {
                                    if config.laplace {
                                        ((k as f64 + 1.0) / (nc + n_levels) as f64).ln()
                                    } else if nc == 0 {
                                        f64::NEG_INFINITY
                                    } else {
                                        (k as f64 / nc as f64).ln()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    likelihoods.push(Likelihood::Categorical(logs));
                }
                FeatureKind::Numeric => {
                    let mut sum = vec![0.0; n_classes];
                    for (row, &label) in data.rows.iter().zip(&data.labels) {
                        sum[label] += row[f].as_num().unwrap_or(0.0);
                    }
                    let mean: Vec<f64> = sum
                        .iter()
                        .zip(&counts)
                        .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
                        .collect();
                    let mut ss = vec![0.0; n_classes];
                    for (row, &label) in data.rows.iter().zip(&data.labels) {
                        let d = row[f].as_num().unwrap_or(0.0) - mean[label];
                        ss[label] += d * d;
                    }
                    let var: Vec<f64> = ss
                        .iter()
                        .zip(&counts)
                        .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
                        .collect();
                    max_var = var.iter().copied().fold(max_var, f64::max);
                    likelihoods.push(Likelihood::Gaussian { mean, var });
                }
            }
        }
        let floor = VARIANCE_FLOOR * if max_var > 0.0 { max_var } else { 1.0 };
        for l in &mut likelihoods {
            if let Likelihood::Gaussian { var, .. } = l {
                for v in var.iter_mut() {
                    *v += floor;
                }
            }
        }
        Ok(Self { log_prior, likelihoods })
    }

    /// Unnormalized log posterior per class.
    pub fn log_joint(&self, row: &[Value]) -> Vec<f64> {
        let mut out = self.log_prior.clone();
        for (c, lp) in out.iter_mut().enumerate() {
            if *lp == f64::NEG_INFINITY {
                continue;
            }
            for (l, v) in self.likelihoods.iter().zip(row) {
                *lp += match (l, v) {
                    (Likelihood::Categorical(t), Value::Cat(k)) => t[c].get(*k).copied().unwrap_or(0.0),
                    (Likelihood::Gaussian { mean, var }, Value::Num(x)) => {
                        let d = x - mean[c];
                        -0.5 * (2.0 * std::f64::consts::PI * var[c]).ln() - d * d / (2.0 * var[c])
                    }
                    _ => 0.0,
                };
            }
        }
        out
    }

    pub fn predict(&self, row: &[Value]) -> Prediction {
        let mut logs = self.log_joint(row);
        if logs.iter().all(|l| *l == f64::NEG_INFINITY) {
            // Every class has a zero likelihood: fall back to the priors.
            logs = self.log_prior.clone();
        }
        let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
        let total: f64 = exp.iter().sum();
        Prediction::from_scores(exp.into_iter().map(|e| e / total).collect())
    }
}
