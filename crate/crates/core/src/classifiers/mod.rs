//! Classifier suite behind one fit/predict contract.
//!
//! [`fit`] trains any [`Algorithm`] on a [`LabeledTable`]; the returned
//! [`FittedModel`] predicts one row at a time. The per-algorithm building
//! blocks (entropy and information gain, the RLS closed form, the SMO dual
//! solver, Newton logistic regression) are public in their submodules.

mod encode;
pub mod ensemble;
pub mod knn;
pub mod logistic;
pub mod naive_bayes;
pub mod rls;
pub mod svm;
pub mod tree;

use std::fmt;
use std::str::FromStr;

pub use encode::FeatureEncoder;
pub use ensemble::bootstrap_indices;
pub use tree::{entropy, information_gain, DecisionTree, Node};

use crate::datasets::{check_row, Feature, LabeledTable, Value};
use crate::error::{Error, Result};
use crate::linalg::KernelSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Knn,
    NaiveBayes,
    DecisionTree,
    LogisticRegression,
    Rls,
    Svm,
    Bagging,
    Boosting,
    RandomForest,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Knn,
        Algorithm::NaiveBayes,
        Algorithm::DecisionTree,
        Algorithm::LogisticRegression,
        Algorithm::Rls,
        Algorithm::Svm,
        Algorithm::Bagging,
        Algorithm::Boosting,
        Algorithm::RandomForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Knn => "knn",
            Algorithm::NaiveBayes => "naive_bayes",
            Algorithm::DecisionTree => "decision_tree",
            Algorithm::LogisticRegression => "logistic_regression",
            Algorithm::Rls => "rls",
            Algorithm::Svm => "svm",
            Algorithm::Bagging => "bagging",
            Algorithm::Boosting => "boosting",
            Algorithm::RandomForest => "random_forest",
        }
    }

    pub fn is_ensemble(self) -> bool {
        matches!(self, Algorithm::Bagging | Algorithm::Boosting | Algorithm::RandomForest)
    }

    /// Algorithms that need at least two classes and numeric features.
    fn is_discriminative(self) -> bool {
        matches!(self, Algorithm::LogisticRegression | Algorithm::Rls | Algorithm::Svm)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown classifier {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitCriterion {
    #[default]
    Entropy,
    Gini,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    #[default]
    None,
    ReducedError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeatureSubset {
    /// `⌈√p⌉` features per tree.
    #[default]
    Auto,
    Fixed(usize),
}

impl FeatureSubset {
    pub fn resolve(self, n_features: usize) -> usize {
        match self {
            FeatureSubset::Auto => (n_features as f64).sqrt().ceil() as usize,
            FeatureSubset::Fixed(m) => m,
        }
        .clamp(1, n_features.max(1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierConfig {
    pub algorithm: Algorithm,
    /// Neighbours consulted by k-NN.
    pub k: usize,
    /// k-NN votes weighted by `1/(d + knn_epsilon)`.
    pub distance_weighted: bool,
    pub knn_epsilon: f64,
    pub split_criterion: SplitCriterion,
    pub pruning: Pruning,
    /// Share of rows held out for reduced-error pruning.
    pub prune_fraction: f64,
    /// Add-one smoothing of categorical naive Bayes likelihoods.
    pub laplace: bool,
    /// RLS regularization weight.
    pub delta: f64,
    /// SVM penalty on slack.
    pub c: f64,
    pub kernel: KernelSpec,
    /// Ridge penalty of logistic regression (the intercept is not penalized).
    pub logistic_ridge: f64,
    pub ensemble_size: usize,
    pub base_algorithm: Algorithm,
    pub feature_subset_size: FeatureSubset,
    pub seed: u64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::DecisionTree,
            k: 5,
            distance_weighted: false,
            knn_epsilon: 1e-12,
            split_criterion: SplitCriterion::Entropy,
            pruning: Pruning::None,
            prune_fraction: 0.2,
            laplace: true,
            delta: 1.0,
            c: 1.0,
            kernel: KernelSpec::default(),
            logistic_ridge: 1e-6,
            ensemble_size: 10,
            base_algorithm: Algorithm::DecisionTree,
            feature_subset_size: FeatureSubset::Auto,
            seed: 0,
        }
    }
}

impl ClassifierConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }

    /// Checks the parameters the chosen algorithm uses; the rest are ignored.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let positive = |v: f64| v > 0.0 && v.is_finite();
        match self.algorithm {
            Algorithm::Knn => {
                if self.k == 0 {
                    return bad("k must be at least 1".into());
                }
                if !positive(self.knn_epsilon) {
                    return bad("knn epsilon must be positive".into());
                }
            }
            Algorithm::DecisionTree | Algorithm::RandomForest
                if self.pruning == Pruning::ReducedError
                    && !(self.prune_fraction > 0.0 && self.prune_fraction < 1.0) =>
            {
                return bad(format!("prune fraction must lie in (0, 1), got {}", self.prune_fraction));
            }
            Algorithm::Rls if !positive(self.delta) => {
                return bad(format!("RLS delta must be positive, got {}", self.delta));
            }
            Algorithm::Svm if !positive(self.c) => {
                return bad(format!("SVM C must be positive, got {}", self.c));
            }
            Algorithm::LogisticRegression if !(self.logistic_ridge >= 0.0 && self.logistic_ridge.is_finite()) => {
                return bad("logistic ridge must be non-negative".into());
            }
            _ => {}
        }
        if matches!(self.algorithm, Algorithm::Rls | Algorithm::Svm) {
            self.kernel.validate()?;
        }
        if self.algorithm.is_ensemble() {
            if self.ensemble_size == 0 {
                return bad("ensemble size must be at least 1".into());
            }
            if self.algorithm != Algorithm::RandomForest {
                if self.base_algorithm.is_ensemble() {
                    return bad("ensemble base learner cannot itself be an ensemble".into());
                }
                if self.kernel == KernelSpec::Precomputed
                    && matches!(self.base_algorithm, Algorithm::Rls | Algorithm::Svm)
                {
                    return bad("resampling ensembles cannot use a precomputed kernel".into());
                }
                ClassifierConfig {
                    algorithm: self.base_algorithm,
                    ..self.clone()
                }
                .validate()?;
            }
            if let FeatureSubset::Fixed(0) = self.feature_subset_size {
                return bad("feature subset size must be at least 1".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// Index into the model's class list.
    pub label: usize,
    /// One score per class.
    pub scores: Vec<f64>,
}

impl Prediction {
    pub(crate) fn from_scores(scores: Vec<f64>) -> Self {
        Self {
            label: argmax(&scores),
            scores,
        }
    }
}

/// Index of the largest value; the lowest index wins ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub(crate) enum ModelKind {
    /// Every training label was the same class.
    Constant(usize),
    Knn(knn::KnnModel),
    NaiveBayes(naive_bayes::NaiveBayesModel),
    Tree(DecisionTree),
    Logistic(FeatureEncoder, logistic::LogisticModel),
    Rls(FeatureEncoder, rls::RlsModel),
    Svm(FeatureEncoder, svm::SvmModel),
    Ensemble(ensemble::EnsembleModel),
}

/// A trained classifier. Immutable; safe to share across threads.
#[derive(Debug, Clone)]
pub struct FittedModel {
    algorithm: Algorithm,
    classes: Vec<String>,
    features: Vec<Feature>,
    kind: ModelKind,
}

impl FittedModel {
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn predict(&self, row: &[Value]) -> Result<Prediction> {
        check_row(&self.features, row)?;
        Ok(self.predict_unchecked(row))
    }

    pub(crate) fn predict_unchecked(&self, row: &[Value]) -> Prediction {
        let n = self.classes.len();
        match &self.kind {
            ModelKind::Constant(c) => {
                let mut scores = vec![0.0; n];
                scores[*c] = 1.0;
                Prediction::from_scores(scores)
            }
            ModelKind::Knn(m) => m.predict(row),
            ModelKind::NaiveBayes(m) => m.predict(row),
            ModelKind::Tree(t) => Prediction::from_scores(t.predict_scores(row)),
            ModelKind::Logistic(enc, m) => m.predict(&enc.encode(row)),
            ModelKind::Rls(enc, m) => m.predict(&enc.encode(row)),
            ModelKind::Svm(enc, m) => m.predict(&enc.encode(row)),
            ModelKind::Ensemble(m) => m.predict(row),
        }
    }

    /// Predicted class for every row of `data`.
    pub fn predict_table(&self, data: &LabeledTable) -> Result<Vec<usize>> {
        data.rows.iter().map(|r| self.predict(r).map(|p| p.label)).collect()
    }

    /// Fraction of rows of `data` whose label is predicted correctly. Class
    /// names are matched by string, so `data` may order its classes
    /// differently from the training table.
    pub fn accuracy(&self, data: &LabeledTable) -> Result<f64> {
        if data.n_rows() == 0 {
            return Err(Error::Input("accuracy of an empty table".into()));
        }
        let mut correct = 0;
        for (row, &label) in data.rows.iter().zip(&data.labels) {
            let p = self.predict(row)?;
            correct += usize::from(self.classes[p.label] == data.classes[label]);
        }
        Ok(correct as f64 / data.n_rows() as f64)
    }

    pub fn tree(&self) -> Option<&DecisionTree> {
        match &self.kind {
            ModelKind::Tree(t) => Some(t),
            _ => None,
        }
    }

    pub fn ensemble(&self) -> Option<&ensemble::EnsembleModel> {
        match &self.kind {
            ModelKind::Ensemble(m) => Some(m),
            _ => None,
        }
    }

    pub fn svm(&self) -> Option<&svm::SvmModel> {
        match &self.kind {
            ModelKind::Svm(_, m) => Some(m),
            _ => None,
        }
    }

    pub fn logistic(&self) -> Option<&logistic::LogisticModel> {
        match &self.kind {
            ModelKind::Logistic(_, m) => Some(m),
            _ => None,
        }
    }

    pub fn rls(&self) -> Option<&rls::RlsModel> {
        match &self.kind {
            ModelKind::Rls(_, m) => Some(m),
            _ => None,
        }
    }
}

/// Trains `config.algorithm` on `data`. Deterministic given `config.seed`.
pub fn fit(config: &ClassifierConfig, data: &LabeledTable) -> Result<FittedModel> {
    config.validate()?;
    if data.n_rows() == 0 {
        return Err(Error::Input("cannot fit a classifier on an empty table".into()));
    }
    for row in &data.rows {
        check_row(&data.features, row)?;
    }
    let present = data.class_counts().iter().filter(|&&c| c > 0).count();
    let algo = config.algorithm;
    if algo.is_discriminative() {
        if present < 2 {
            return Err(Error::Input(format!("{algo} needs at least two classes in the training data")));
        }
        FeatureEncoder::require_numeric(&data.features, algo)?;
    }
    let kind = match algo {
        Algorithm::Knn => ModelKind::Knn(knn::KnnModel::fit(config, data)),
        Algorithm::NaiveBayes => ModelKind::NaiveBayes(naive_bayes::NaiveBayesModel::fit(config, data)?),
        Algorithm::DecisionTree => ModelKind::Tree(DecisionTree::fit(
            data,
            &tree::TreeOptions {
                criterion: config.split_criterion,
                pruning: config.pruning,
                prune_fraction: config.prune_fraction,
                seed: config.seed,
                allowed: None,
            },
        )?),
        Algorithm::LogisticRegression => {
            let enc = FeatureEncoder::new(&data.features);
            let model = logistic::LogisticModel::fit_table(config, data, &enc)?;
            ModelKind::Logistic(enc, model)
        }
        Algorithm::Rls => {
            let enc = FeatureEncoder::new(&data.features);
            let model = rls::RlsModel::fit_table(config, data, &enc)?;
            ModelKind::Rls(enc, model)
        }
        Algorithm::Svm => {
            let enc = FeatureEncoder::new(&data.features);
            let model = svm::SvmModel::fit_table(config, data, &enc)?;
            ModelKind::Svm(enc, model)
        }
        Algorithm::Bagging | Algorithm::Boosting | Algorithm::RandomForest => {
            ModelKind::Ensemble(ensemble::EnsembleModel::fit(config, data)?)
        }
    };
    Ok(FittedModel {
        algorithm: algo,
        classes: data.classes.clone(),
        features: data.features.clone(),
        kind,
    })
}

/// Fits with a constant fallback when the rows hold a single class, as
/// happens to small bootstrap samples.
pub(crate) fn fit_or_constant(config: &ClassifierConfig, data: &LabeledTable) -> Result<FittedModel> {
    let counts = data.class_counts();
    let present: Vec<usize> = (0..counts.len()).filter(|&c| counts[c] > 0).collect();
    if present.len() == 1 && config.algorithm.is_discriminative() {
        return Ok(FittedModel {
            algorithm: config.algorithm,
            classes: data.classes.clone(),
            features: data.features.clone(),
            kind: ModelKind::Constant(present[0]),
        });
    }
    fit(config, data)
}

/// Seeded split into (train, holdout) with `round(n · holdout_fraction)`
/// rows held out, at least one row on each side when `n ≥ 2`.
pub fn holdout_split(data: &LabeledTable, holdout_fraction: f64, seed: u64) -> Result<(LabeledTable, LabeledTable)> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    if !(holdout_fraction > 0.0 && holdout_fraction < 1.0) {
        return Err(Error::Config(format!("holdout fraction must lie in (0, 1), got {holdout_fraction}")));
    }
    let n = data.n_rows();
    if n < 2 {
        return Err(Error::Input("need at least two rows for a holdout split".into()));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    let n_test = ((n as f64 * holdout_fraction).round() as usize).clamp(1, n - 1);
    let test = idx.split_off(n - n_test);
    Ok((data.subset(&idx), data.subset(&test)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::weather_fixture;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("Decision-Tree".parse::<Algorithm>().unwrap(), Algorithm::DecisionTree);
        assert!(matches!("perceptron".parse::<Algorithm>(), Err(Error::Config(_))));
    }

    #[test]
    fn argmax_prefers_lowest_index() {
        assert_eq!(argmax(&[0.5, 0.5]), 0);
        assert_eq!(argmax(&[0.1, 0.7, 0.7]), 1);
    }

    #[test]
    fn invalid_parameters_are_config_errors() {
        let t = weather_fixture();
        let cases = [
            ClassifierConfig { k: 0, ..ClassifierConfig::new(Algorithm::Knn) },
            ClassifierConfig { delta: 0.0, ..ClassifierConfig::new(Algorithm::Rls) },
            ClassifierConfig { c: -1.0, ..ClassifierConfig::new(Algorithm::Svm) },
            ClassifierConfig { ensemble_size: 0, ..ClassifierConfig::new(Algorithm::Bagging) },
            ClassifierConfig {
                base_algorithm: Algorithm::Boosting,
                ..ClassifierConfig::new(Algorithm::Bagging)
            },
        ];
        for cfg in cases {
            assert!(matches!(fit(&cfg, &t), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn unused_parameters_are_ignored() {
        let cfg = ClassifierConfig {
            delta: -3.0,
            c: 0.0,
            ..ClassifierConfig::new(Algorithm::DecisionTree)
        };
        assert!(fit(&cfg, &weather_fixture()).is_ok());
    }

    #[test]
    fn categorical_only_data_rejects_numeric_learners() {
        let t = weather_fixture();
        for a in [Algorithm::Svm, Algorithm::Rls, Algorithm::LogisticRegression] {
            assert!(matches!(fit(&ClassifierConfig::new(a), &t), Err(Error::Config(_))), "{a}");
        }
    }

    #[test]
    fn predict_rejects_schema_mismatch() {
        let t = weather_fixture();
        let m = fit(&ClassifierConfig::new(Algorithm::DecisionTree), &t).unwrap();
        assert!(matches!(m.predict(&[Value::Cat(0)]), Err(Error::Input(_))));
        assert!(matches!(
            m.predict(&[Value::Num(0.0), Value::Cat(0), Value::Cat(0), Value::Cat(0)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn holdout_split_partitions_rows() {
        let t = weather_fixture();
        let (train, test) = holdout_split(&t, 0.3, 7).unwrap();
        assert_eq!(train.n_rows() + test.n_rows(), 14);
        assert_eq!(test.n_rows(), 4);
        assert_eq!(holdout_split(&t, 0.3, 7).unwrap().1, test);
    }

    #[test]
    fn feature_subset_auto_is_ceil_sqrt() {
        assert_eq!(FeatureSubset::Auto.resolve(4), 2);
        assert_eq!(FeatureSubset::Auto.resolve(5), 3);
        assert_eq!(FeatureSubset::Fixed(10).resolve(3), 3);
    }
}
