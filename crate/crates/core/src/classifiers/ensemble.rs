//! Bagging, AdaBoost.M1 boosting and random forests, combined by weighted
//! voting.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classifiers::tree::{DecisionTree, TreeOptions};
use crate::classifiers::{argmax, fit_or_constant, Algorithm, ClassifierConfig, FittedModel, ModelKind, Prediction};
use crate::datasets::{LabeledTable, Value};
use crate::error::{Error, Result};

/// Weighted error substituted for a perfect boosting round.
const PERFECT_ROUND_ERROR: f64 = 1e-10;

/// Seed of ensemble member `member`, derived from the ensemble seed by a
/// splitmix64 step.
pub fn member_seed(seed: u64, member: usize) -> u64 {
    let mut z = seed.wrapping_add((member as u64).wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The `n`-row bootstrap draw (with replacement) of ensemble member `member`.
pub fn bootstrap_indices(n: usize, seed: u64, member: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(member_seed(seed, member));
    (0..n).map(|_| rng.random_range(0..n)).collect()
}

#[derive(Debug, Clone)]
pub struct Member {
    pub model: FittedModel,
    pub weight: f64,
    /// Features the member may split on (random forests).
    pub features: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct EnsembleModel {
    pub members: Vec<Member>,
    n_classes: usize,
    /// Weighted training error of each kept boosting round.
    pub round_errors: Vec<f64>,
    /// Boosting kept a first-round model whose error was at least 0.5.
    pub weak_first_round: bool,
}

impl EnsembleModel {
    pub(crate) fn fit(config: &ClassifierConfig, data: &LabeledTable) -> Result<Self> {
        let members = match config.algorithm {
            Algorithm::Bagging => bagging(config, data)?,
            Algorithm::RandomForest => random_forest(config, data)?,
            Algorithm::Boosting => return boosting(config, data),
            other => return Err(Error::Config(format!("{other} is not an ensemble"))),
        };
        Ok(Self {
            members,
            n_classes: data.n_classes(),
            round_errors: Vec::new(),
            weak_first_round: false,
        })
    }

    /// Normalized weighted vote mass per class.
    pub fn predict(&self, row: &[Value]) -> Prediction {
        let mut votes = vec![0.0; self.n_classes];
        for m in &self.members {
            votes[m.model.predict_unchecked(row).label] += m.weight;
        }
        let total: f64 = votes.iter().sum();
        if total > 0.0 {
            for v in &mut votes {
                *v /= total;
            }
        }
        Prediction {
            label: argmax(&votes),
            scores: votes,
        }
    }
}

fn base_config(config: &ClassifierConfig, seed: u64) -> ClassifierConfig {
    ClassifierConfig {
        algorithm: config.base_algorithm,
        seed,
        ..config.clone()
    }
}

fn bagging(config: &ClassifierConfig, data: &LabeledTable) -> Result<Vec<Member>> {
    (0..config.ensemble_size)
        .into_par_iter()
        .map(|m| {
            let sample = data.subset(&bootstrap_indices(data.n_rows(), config.seed, m));
            Ok(Member {
                model: fit_or_constant(&base_config(config, member_seed(config.seed, m)), &sample)?,
                weight: 1.0,
                features: None,
            })
        })
        .collect()
}

fn random_forest(config: &ClassifierConfig, data: &LabeledTable) -> Result<Vec<Member>> {
    let p = data.n_features();
    let m_features = config.feature_subset_size.resolve(p);
    (0..config.ensemble_size)
        .into_par_iter()
        .map(|m| {
            let seed = member_seed(config.seed, m);
            let sample = data.subset(&bootstrap_indices(data.n_rows(), config.seed, m));
            // A second stream for the feature draw keeps bootstraps identical
            // to bagging's.
            let mut rng = ChaCha8Rng::seed_from_u64(member_seed(seed, usize::MAX));
            let mut features = sample_features(&mut rng, p, m_features);
            features.sort_unstable();
            let tree = DecisionTree::fit(
                &sample,
                &TreeOptions {
                    criterion: config.split_criterion,
                    pruning: config.pruning,
                    prune_fraction: config.prune_fraction,
                    seed,
                    allowed: Some(&features),
                },
            )?;
            Ok(Member {
                model: FittedModel {
                    algorithm: Algorithm::DecisionTree,
                    classes: data.classes.clone(),
                    features: data.features.clone(),
                    kind: ModelKind::Tree(tree),
                },
                weight: 1.0,
                features: Some(features),
            })
        })
        .collect()
}

fn sample_features(rng: &mut ChaCha8Rng, p: usize, m: usize) -> Vec<usize> {
    if p == 0 {
        return Vec::new();
    }
    sample(rng, p, m.min(p)).into_vec()
}

fn boosting(config: &ClassifierConfig, data: &LabeledTable) -> Result<EnsembleModel> {
    let n = data.n_rows();
    let mut weights = vec![1.0 / n as f64; n];
    let mut members = Vec::new();
    let mut round_errors = Vec::new();
    let mut weak_first_round = false;
    for round in 0..config.ensemble_size {
        let seed = member_seed(config.seed, round);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = WeightedIndex::new(&weights).map_err(|e| Error::Numeric(format!("boosting weights: {e}")))?;
        let idx: Vec<usize> = (0..n).map(|_| dist.sample(&mut rng)).collect();
        let model = fit_or_constant(&base_config(config, seed), &data.subset(&idx))?;
        let wrong: Vec<bool> = data
            .rows
            .iter()
            .zip(&data.labels)
            .map(|(row, &label)| model.predict_unchecked(row).label != label)
            .collect();
        let err: f64 = weights.iter().zip(&wrong).filter(|(_, &w)| w).map(|(w, _)| w).sum();

        if err >= 0.5 {
            if round == 0 {
                log::warn!("boosting: first base model has weighted error {err:.4} >= 0.5; keeping it alone");
                members.push(Member {
                    model,
                    weight: 1.0,
                    features: None,
                });
                round_errors.push(err);
                weak_first_round = true;
            } else {
                log::debug!("boosting: round {} error {err:.4} >= 0.5, stopping", round + 1);
            }
            break;
        }
        let e = err.max(PERFECT_ROUND_ERROR);
        members.push(Member {
            model,
            weight: ((1.0 - e) / e).ln(),
            features: None,
        });
        round_errors.push(err);
        if err == 0.0 {
            break;
        }
        let beta = err / (1.0 - err);
        for (w, &bad) in weights.iter_mut().zip(&wrong) {
            if !bad {
                *w *= beta;
            }
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
    }
    Ok(EnsembleModel {
        members,
        n_classes: data.n_classes(),
        round_errors,
        weak_first_round,
    })
}
