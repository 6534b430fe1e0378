//! Bipartite local models: one classifier per drug over targets and one per
//! target over drugs, combined per pair. The neighbor-inferring variant
//! substitutes a similarity-weighted profile for drugs or targets left with
//! no known interactions.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::classifiers::svm::svm_fit;
use crate::classifiers::{fit, Algorithm, ClassifierConfig};
use crate::datasets::{DtiDataset, InteractionMatrix, LabeledTable, SimilarityMatrix, Value};
use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix, RegularizedSolver};
use crate::predictors::{Method, PairScore, PairScorer, ScoreMatrix};
use crate::similarity::{as_kernel, Side, SimilarityKind, SimilaritySource};

/// How the drug-side and target-side scores of a pair are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Combine {
    #[default]
    Max,
    Mean,
}

impl Combine {
    pub fn apply(self, drug_side: f64, target_side: f64) -> f64 {
        match self {
            Combine::Max => drug_side.max(target_side),
            Combine::Mean => 0.5 * (drug_side + target_side),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Combine::Max => "max",
            Combine::Mean => "mean",
        }
    }
}

impl fmt::Display for Combine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Combine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" => Ok(Combine::Max),
            "mean" => Ok(Combine::Mean),
            _ => Err(Error::Config(format!("unknown combination {s:?} (expected max or mean)"))),
        }
    }
}

/// Neighbor weighting used when inferring a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InferringMode {
    /// Weight `s`.
    #[default]
    Linear,
    /// Weight `e^{s/β}`.
    Exponential,
}

impl InferringMode {
    pub fn name(self) -> &'static str {
        match self {
            InferringMode::Linear => "linear",
            InferringMode::Exponential => "exponential",
        }
    }
}

impl fmt::Display for InferringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InferringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(InferringMode::Linear),
            "exponential" | "exp" => Ok(InferringMode::Exponential),
            _ => Err(Error::Config(format!("unknown inferring mode {s:?} (expected linear or exponential)"))),
        }
    }
}

/// Settings of profile inference for candidates without known interactions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inferring {
    pub mode: InferringMode,
    /// Bandwidth of the exponential weights.
    pub beta: f64,
    /// Neighbors less similar than this contribute nothing.
    pub threshold: f64,
}

impl Default for Inferring {
    fn default() -> Self {
        Self {
            mode: InferringMode::Linear,
            beta: 0.1,
            threshold: 0.0,
        }
    }
}

impl Inferring {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.threshold) {
            return Err(Error::Config(format!(
                "neighbor threshold must lie in [0, 1), got {}",
                self.threshold
            )));
        }
        if self.mode == InferringMode::Exponential && !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Config(format!("exponential bandwidth must be positive, got {}", self.beta)));
        }
        Ok(())
    }

    fn weight(&self, s: f64) -> f64 {
        if s < self.threshold {
            return 0.0;
        }
        match self.mode {
            InferringMode::Linear => s,
            InferringMode::Exponential => (s / self.beta).exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlmParams {
    /// Local model trained for each drug and each target.
    pub local_classifier: ClassifierConfig,
    pub combine: Combine,
    /// Infer profiles for drugs/targets with no known interactions.
    pub neighbor_inferring: bool,
    pub inferring: Inferring,
}

impl Default for BlmParams {
    fn default() -> Self {
        Self {
            local_classifier: ClassifierConfig {
                delta: 1.0,
                ..ClassifierConfig::new(Algorithm::Rls)
            },
            combine: Combine::Max,
            neighbor_inferring: false,
            inferring: Inferring::default(),
        }
    }
}

impl BlmParams {
    pub fn validate(&self) -> Result<()> {
        self.local_classifier.validate()?;
        self.inferring.validate()
    }
}

/// Similarity-weighted sum of the neighbors' profiles before rescaling:
/// `l_k = Σ_{h≠index} w(s_{index,h}) · a_hk` over the rows of `A` (drugs)
/// or its columns (targets).
pub fn infer_profile_raw(
    sim: &SimilarityMatrix,
    a: &InteractionMatrix,
    side: Side,
    index: usize,
    inferring: &Inferring,
) -> Vec<f64> {
    let (n_own, n_other) = match side {
        Side::Drugs => (a.n_drugs(), a.n_targets()),
        Side::Targets => (a.n_targets(), a.n_drugs()),
    };
    let mut l = vec![0.0; n_other];
    for h in (0..n_own).filter(|&h| h != index) {
        let w = inferring.weight(sim.get(index, h));
        if w == 0.0 {
            continue;
        }
        for (k, lk) in l.iter_mut().enumerate() {
            let known = match side {
                Side::Drugs => a.get(h, k),
                Side::Targets => a.get(k, h),
            };
            if known {
                *lk += w;
            }
        }
    }
    l
}

/// Inferred profile min-max rescaled to `[0, 1]`; a constant vector maps to
/// zeros.
pub fn infer_profile(
    sim: &SimilarityMatrix,
    a: &InteractionMatrix,
    side: Side,
    index: usize,
    inferring: &Inferring,
) -> Vec<f64> {
    rescale(infer_profile_raw(sim, a, side, index, inferring))
}

/// Scores of one side with the no-training-data flag.
type Flagged = (Vec<f64>, bool);

fn rescale(mut v: Vec<f64>) -> Vec<f64> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        v.iter_mut().for_each(|x| *x = (*x - lo) / (hi - lo));
    } else {
        v.iter_mut().for_each(|x| *x = 0.0);
    }
    v
}

/// Similarity, kernel and (for RLS) factorization of one entity set, used
/// by the local models trained over that set.
#[derive(Debug, Clone)]
struct LocalSpace {
    sim: SimilarityMatrix,
    kernel: DenseMatrix,
    solver: Option<RegularizedSolver>,
}

impl LocalSpace {
    fn new(sim: SimilarityMatrix, local: &ClassifierConfig) -> Result<Self> {
        let kernel = as_kernel(&sim)?;
        let solver = match local.algorithm {
            Algorithm::Rls => Some(RegularizedSolver::new(&kernel, local.delta)?),
            _ => None,
        };
        Ok(Self { sim, kernel, solver })
    }

    /// Scores of the local model trained on `labels` (one per entity) at
    /// the entities `queries`. Every query is scored by the same arithmetic
    /// whatever the other queries are.
    fn scores(&self, labels: &[f64], queries: &[usize], local: &ClassifierConfig) -> Result<Vec<f64>> {
        if labels.iter().all(|&y| y == 0.0) {
            return Ok(vec![0.0; queries.len()]);
        }
        match local.algorithm {
            Algorithm::Rls => {
                let solver = self.solver.as_ref().expect("RLS spaces carry a factorization");
                let c = solver.solve(labels)?;
                Ok(queries.iter().map(|&q| dot(self.kernel.row(q), &c)).collect())
            }
            Algorithm::Svm => {
                let y: Vec<f64> = labels.iter().map(|&v| if v > 0.5 { 1.0 } else { -1.0 }).collect();
                if let Some(constant) = single_class(&y) {
                    return Ok(vec![constant; queries.len()]);
                }
                let sol = svm_fit(&self.kernel, &y, local.c)?;
                Ok(queries.iter().map(|&q| sol.decision_value(&y, self.kernel.row(q))).collect())
            }
            _ => {
                let y: Vec<usize> = labels.iter().map(|&v| usize::from(v > 0.5)).collect();
                if y.iter().all(|&c| c == y[0]) {
                    return Ok(vec![y[0] as f64; queries.len()]);
                }
                let rows: Vec<Vec<f64>> = (0..self.sim.len()).map(|k| self.sim.row(k).to_vec()).collect();
                let model = fit(local, &LabeledTable::numeric(rows, y)?)?;
                queries
                    .iter()
                    .map(|&q| {
                        let row: Vec<Value> = self.sim.row(q).iter().map(|&v| Value::Num(v)).collect();
                        Ok(model.predict(&row)?.scores[1])
                    })
                    .collect()
            }
        }
    }
}

/// `Some(score)` when all `±1` labels agree: 1 for all positive, 0 for all
/// negative.
fn single_class(y: &[f64]) -> Option<f64> {
    if y.iter().all(|&v| v == y[0]) {
        Some(if y[0] > 0.0 { 1.0 } else { 0.0 })
    } else {
        None
    }
}

#[derive(Debug, Clone)]
struct Spaces {
    drugs: LocalSpace,
    targets: LocalSpace,
}

/// BLM/BLMN scorer over a dataset. Similarities that depend on the
/// interaction matrix are rebuilt from the matrix passed to each call.
pub struct BlmScorer<'a> {
    ds: &'a DtiDataset,
    params: BlmParams,
    source: SimilaritySource,
    fixed: Option<Spaces>,
    echo: Vec<(String, String)>,
}

impl<'a> BlmScorer<'a> {
    pub fn new(ds: &'a DtiDataset, params: BlmParams, source: SimilaritySource) -> Result<Self> {
        params.validate()?;
        source.validate()?;
        let fixed = if source.kind == SimilarityKind::ChemSeq || !source.recompute_per_mask {
            Some(Self::spaces_for(ds, &params, &source, &ds.interactions)?)
        } else {
            None
        };
        let echo = blm_echo(&params, &source);
        Ok(Self {
            ds,
            params,
            source,
            fixed,
            echo,
        })
    }

    fn spaces_for(ds: &DtiDataset, params: &BlmParams, source: &SimilaritySource, a: &InteractionMatrix) -> Result<Spaces> {
        let (sd, st) = source.similarities(ds, a)?;
        Ok(Spaces {
            drugs: LocalSpace::new(sd, &params.local_classifier)?,
            targets: LocalSpace::new(st, &params.local_classifier)?,
        })
    }

    fn spaces(&self, a: &InteractionMatrix) -> Result<Cow<'_, Spaces>> {
        match &self.fixed {
            Some(s) => Ok(Cow::Borrowed(s)),
            None => Ok(Cow::Owned(Self::spaces_for(self.ds, &self.params, &self.source, a)?)),
        }
    }

    fn method(&self) -> Method {
        if self.params.neighbor_inferring {
            Method::Blmn
        } else {
            Method::Blm
        }
    }

    /// Labels for the local model of `index` on `side`, and whether the
    /// model had no training data.
    fn labels(&self, sp: &Spaces, a: &InteractionMatrix, side: Side, index: usize) -> (Vec<f64>, bool) {
        let profile = match side {
            Side::Drugs => a.drug_profile(index).to_vec(),
            Side::Targets => a.target_profile(index),
        };
        if profile.iter().any(|&v| v != 0.0) {
            return (profile, false);
        }
        if !self.params.neighbor_inferring {
            return (profile, true);
        }
        let sim = match side {
            Side::Drugs => &sp.drugs.sim,
            Side::Targets => &sp.targets.sim,
        };
        (infer_profile(sim, a, side, index, &self.params.inferring), false)
    }

    fn drug_side(&self, sp: &Spaces, a: &InteractionMatrix, i: usize, targets: &[usize]) -> Result<(Vec<f64>, bool)> {
        let (y, empty) = self.labels(sp, a, Side::Drugs, i);
        Ok((sp.targets.scores(&y, targets, &self.params.local_classifier)?, empty))
    }

    fn target_side(&self, sp: &Spaces, a: &InteractionMatrix, j: usize, drugs: &[usize]) -> Result<(Vec<f64>, bool)> {
        let (y, empty) = self.labels(sp, a, Side::Targets, j);
        Ok((sp.drugs.scores(&y, drugs, &self.params.local_classifier)?, empty))
    }

    /// Drug-side rows and target-side columns of every pair, each with its
    /// no-training-data flag.
    fn sweep(&self, a: &InteractionMatrix) -> Result<(Vec<Flagged>, Vec<Flagged>)> {
        check_shape(self.ds, a)?;
        let sp = self.spaces(a)?;
        let all_t: Vec<usize> = (0..a.n_targets()).collect();
        let all_d: Vec<usize> = (0..a.n_drugs()).collect();
        let rows = (0..a.n_drugs())
            .into_par_iter()
            .map(|i| self.drug_side(&sp, a, i, &all_t))
            .collect::<Result<Vec<_>>>()?;
        let cols = (0..a.n_targets())
            .into_par_iter()
            .map(|j| self.target_side(&sp, a, j, &all_d))
            .collect::<Result<Vec<_>>>()?;
        Ok((rows, cols))
    }

    /// Drug-side and target-side scores of every pair.
    pub fn one_sided(&self, a: &InteractionMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
        let (rows, cols) = self.sweep(a)?;
        let (nd, nt) = (a.n_drugs(), a.n_targets());
        let dt = DenseMatrix::from_fn(nd, nt, |i, j| rows[i].0[j]);
        let td = DenseMatrix::from_fn(nd, nt, |i, j| cols[j].0[i]);
        Ok((dt, td))
    }
}

fn check_shape(ds: &DtiDataset, a: &InteractionMatrix) -> Result<()> {
    if a.n_drugs() != ds.n_drugs() || a.n_targets() != ds.n_targets() {
        return Err(Error::Input(format!(
            "interaction matrix is {}x{}, dataset is {}x{}",
            a.n_drugs(),
            a.n_targets(),
            ds.n_drugs(),
            ds.n_targets()
        )));
    }
    Ok(())
}

pub(crate) fn blm_echo(params: &BlmParams, source: &SimilaritySource) -> Vec<(String, String)> {
    let lc = &params.local_classifier;
    let mut echo = vec![
        ("similarity".to_string(), source.kind.to_string()),
        ("local_classifier".to_string(), lc.algorithm.to_string()),
        ("combine".to_string(), params.combine.to_string()),
        ("neighbor_inferring".to_string(), params.neighbor_inferring.to_string()),
    ];
    match lc.algorithm {
        Algorithm::Rls => echo.push(("delta".into(), lc.delta.to_string())),
        Algorithm::Svm => echo.push(("c".into(), lc.c.to_string())),
        _ => echo.push(("seed".into(), lc.seed.to_string())),
    }
    if params.neighbor_inferring {
        echo.push(("inferring_mode".into(), params.inferring.mode.to_string()));
        echo.push(("beta".into(), params.inferring.beta.to_string()));
        echo.push(("neighbor_threshold".into(), params.inferring.threshold.to_string()));
    }
    echo.extend(similarity_echo(source));
    echo
}

pub(crate) fn similarity_echo(source: &SimilaritySource) -> Vec<(String, String)> {
    let mut echo = Vec::new();
    if source.kind.uses_network() {
        echo.push(("gip_bandwidth_scale".into(), source.gip_bandwidth_scale.to_string()));
        echo.push(("recompute_per_mask".into(), source.recompute_per_mask.to_string()));
    }
    if source.kind == SimilarityKind::Hybrid {
        echo.push(("hybrid_weight".into(), source.hybrid_weight.to_string()));
    }
    echo
}

impl PairScorer for BlmScorer<'_> {
    fn score_all(&self, a: &InteractionMatrix) -> Result<ScoreMatrix> {
        let (rows, cols) = self.sweep(a)?;
        let (nd, nt) = (a.n_drugs(), a.n_targets());
        let combine = self.params.combine;
        let values = DenseMatrix::from_fn(nd, nt, |i, j| combine.apply(rows[i].0[j], cols[j].0[i]));
        let flagged = (0..nd)
            .flat_map(|i| (0..nt).map(move |j| (i, j)))
            .map(|(i, j)| rows[i].1 || cols[j].1)
            .collect();
        ScoreMatrix::new(values, self.method(), self.echo.clone(), flagged)
    }

    fn score_pair(&self, a: &InteractionMatrix, i: usize, j: usize) -> Result<PairScore> {
        check_shape(self.ds, a)?;
        if i >= a.n_drugs() || j >= a.n_targets() {
            return Err(Error::Input(format!("pair ({i}, {j}) is outside the interaction matrix")));
        }
        let sp = self.spaces(a)?;
        let (dt, empty_d) = self.drug_side(&sp, a, i, &[j])?;
        let (td, empty_t) = self.target_side(&sp, a, j, &[i])?;
        Ok(PairScore {
            value: self.params.combine.apply(dt[0], td[0]),
            no_training_data: empty_d || empty_t,
        })
    }

    fn method(&self) -> Method {
        BlmScorer::method(self)
    }

    fn params(&self) -> &[(String, String)] {
        &self.echo
    }
}

/// Score of pair `(i, j)` from the dataset's interaction matrix as given
/// (mask `a_ij` first when evaluating) with chemical/sequence similarity.
pub fn blm_predict_pair(ds: &DtiDataset, i: usize, j: usize, params: &BlmParams) -> Result<PairScore> {
    BlmScorer::new(ds, params.clone(), SimilaritySource::default())?.score_pair(&ds.interactions, i, j)
}

/// Leave-one-out scores of every pair with neighbor inferring on.
pub fn blmn_predict_all(ds: &DtiDataset, params: &BlmParams, source: SimilaritySource) -> Result<ScoreMatrix> {
    let params = BlmParams {
        neighbor_inferring: true,
        ..params.clone()
    };
    let scorer = BlmScorer::new(ds, params, source)?;
    crate::predictors::masked_sweep(&scorer, &ds.interactions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_force_inverse;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sim(rows: &[Vec<f64>]) -> SimilarityMatrix {
        SimilarityMatrix::new(DenseMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn ia(rows: &[Vec<u8>]) -> InteractionMatrix {
        InteractionMatrix::from_rows(rows).unwrap()
    }

    fn toy(a: &[Vec<u8>], sd: &[Vec<f64>], st: &[Vec<f64>]) -> DtiDataset {
        DtiDataset::from_parts(ia(a), sim(sd), sim(st)).unwrap()
    }

    fn rls_oracle(k: &DenseMatrix, y: &[f64], delta: f64, q: usize) -> f64 {
        let c = brute_force_inverse(&k.add_diagonal(delta)).matvec(y).unwrap();
        dot(k.row(q), &c)
    }

    /// Random dataset with PSD similarities built from random features.
    fn random_dataset(rng: &mut ChaCha8Rng, nd: usize, nt: usize, density: f64) -> DtiDataset {
        let a: Vec<Vec<u8>> = (0..nd)
            .map(|_| (0..nt).map(|_| u8::from(rng.random_bool(density))).collect())
            .collect();
        let mut gauss = |n: usize| {
            let x: Vec<Vec<f64>> = (0..n).map(|_| (0..3).map(|_| rng.random_range(0.0..1.0)).collect()).collect();
            DenseMatrix::from_fn(n, n, |p, q| {
                (-crate::linalg::squared_distance(&x[p], &x[q])).exp()
            })
        };
        let sd = gauss(nd);
        let st = gauss(nt);
        DtiDataset::from_parts(
            ia(&a),
            SimilarityMatrix::new(sd).unwrap(),
            SimilarityMatrix::new(st).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn combination_rules() {
        assert_eq!(Combine::Mean.apply(0.2, 0.8), 0.5);
        assert_eq!(Combine::Max.apply(0.2, 0.8), 0.8);
        assert_eq!("MEAN".parse::<Combine>().unwrap(), Combine::Mean);
        assert!("min".parse::<Combine>().is_err());
    }

    #[test]
    fn two_by_two_rls_matches_closed_form() {
        let s = vec![vec![1.0, 0.3], vec![0.3, 1.0]];
        let ds = toy(&[vec![1, 0], vec![0, 0]], &s, &s);
        let k = DenseMatrix::from_rows(&s).unwrap();
        let params = BlmParams::default();
        // Drug 0 has target 0; target 1 has no drugs, so only the drug side
        // scores pair (0, 1).
        let p = blm_predict_pair(&ds, 0, 1, &params).unwrap();
        let dt = rls_oracle(&k, &[1.0, 0.0], 1.0, 1);
        assert!((p.value - dt).abs() < 1e-12, "{} vs {dt}", p.value);
        assert!(p.no_training_data);
        // Pair (1, 0): drug 1 is empty, target 0 has drug 0.
        let p = blm_predict_pair(&ds, 1, 0, &params).unwrap();
        assert!((p.value - rls_oracle(&k, &[1.0, 0.0], 1.0, 1)).abs() < 1e-12);
        // Pair (0, 0): both sides trained on the same profile.
        let p = blm_predict_pair(&ds, 0, 0, &params).unwrap();
        assert!((p.value - rls_oracle(&k, &[1.0, 0.0], 1.0, 0)).abs() < 1e-12);
        assert!(!p.no_training_data);
        let mean = blm_predict_pair(&ds, 0, 1, &BlmParams { combine: Combine::Mean, ..params }).unwrap();
        assert!((mean.value - 0.5 * dt).abs() < 1e-12);
    }

    #[test]
    fn inferred_profile_copies_a_single_neighbor() {
        let s = sim(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let a = ia(&[vec![0, 0, 0], vec![1, 0, 0]]);
        let l = infer_profile(&s, &a, Side::Drugs, 0, &Inferring::default());
        assert_eq!(l, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn equal_neighbors_give_a_constant_profile_that_rescales_to_zero() {
        let s = sim(&[vec![1.0, 0.5, 0.5], vec![0.5, 1.0, 0.0], vec![0.5, 0.0, 1.0]]);
        let a = ia(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let inf = Inferring::default();
        assert_eq!(infer_profile_raw(&s, &a, Side::Drugs, 0, &inf), vec![0.5, 0.5]);
        assert_eq!(infer_profile(&s, &a, Side::Drugs, 0, &inf), vec![0.0, 0.0]);
    }

    #[test]
    fn threshold_removes_weak_neighbors() {
        let s = sim(&[vec![1.0, 0.5, 0.9], vec![0.5, 1.0, 0.0], vec![0.9, 0.0, 1.0]]);
        let a = ia(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let inf = Inferring {
            threshold: 0.6,
            ..Inferring::default()
        };
        assert_eq!(infer_profile_raw(&s, &a, Side::Drugs, 0, &inf), vec![0.0, 0.9]);
        assert_eq!(infer_profile(&s, &a, Side::Drugs, 0, &inf), vec![0.0, 1.0]);
    }

    #[test]
    fn target_profiles_use_columns() {
        let s = sim(&[vec![1.0, 0.8], vec![0.8, 1.0]]);
        let a = ia(&[vec![0, 1], vec![0, 0], vec![0, 1]]);
        assert_eq!(infer_profile_raw(&s, &a, Side::Targets, 0, &Inferring::default()), vec![0.8, 0.0, 0.8]);
    }

    #[test]
    fn exponential_weights() {
        let s = sim(&[vec![1.0, 0.5, 0.2], vec![0.5, 1.0, 0.0], vec![0.2, 0.0, 1.0]]);
        let a = ia(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let inf = Inferring {
            mode: InferringMode::Exponential,
            beta: 0.5,
            threshold: 0.0,
        };
        let l = infer_profile_raw(&s, &a, Side::Drugs, 0, &inf);
        assert!((l[0] - 1f64.exp()).abs() < 1e-12 && (l[1] - 0.4f64.exp()).abs() < 1e-12);
        assert!(Inferring { beta: 0.0, ..inf }.validate().is_err());
        assert!(Inferring { threshold: 1.0, ..Inferring::default() }.validate().is_err());
    }

    #[test]
    fn blmn_traces_infer_then_rls() {
        // Drug 0 has one target; masking it leaves the drug with no
        // interactions, so its profile is inferred from drug 1.
        let sd = vec![vec![1.0, 0.6], vec![0.6, 1.0]];
        let st = vec![vec![1.0, 0.4], vec![0.4, 1.0]];
        let ds = toy(&[vec![1, 0], vec![1, 1]], &sd, &st);
        let p = blmn_predict_all(&ds, &BlmParams::default(), SimilaritySource::default()).unwrap();

        // Masked A = [[0,0],[1,1]]. Inferred drug-0 profile: 0.6·(1,1),
        // constant, rescaled to zeros, so the drug side scores 0.
        let kd = DenseMatrix::from_rows(&sd).unwrap();
        let td = rls_oracle(&kd, &[0.0, 1.0], 1.0, 0);
        assert!((p.get(0, 0) - td.max(0.0)).abs() < 1e-12);

        // Pair (1, 0) masked: A = [[1,0],[0,1]]; nothing is empty.
        let kt = DenseMatrix::from_rows(&st).unwrap();
        let dt = rls_oracle(&kt, &[0.0, 1.0], 1.0, 0);
        let td = rls_oracle(&kd, &[1.0, 0.0], 1.0, 1);
        assert!((p.get(1, 0) - dt.max(td)).abs() < 1e-12);
    }

    #[test]
    fn blmn_uses_inferred_labels_for_new_drugs() {
        let sd = vec![vec![1.0, 0.9, 0.1], vec![0.9, 1.0, 0.1], vec![0.1, 0.1, 1.0]];
        let st = vec![vec![1.0, 0.2], vec![0.2, 1.0]];
        let ds = toy(&[vec![1, 0], vec![1, 0], vec![0, 1]], &sd, &st);
        let blm = BlmScorer::new(&ds, BlmParams::default(), SimilaritySource::default()).unwrap();
        let blmn = BlmScorer::new(
            &ds,
            BlmParams {
                neighbor_inferring: true,
                ..BlmParams::default()
            },
            SimilaritySource::default(),
        )
        .unwrap();
        let masked = ds.interactions.masked(0, 0);
        let classic = blm.score_pair(&masked, 0, 0).unwrap();
        let inferred = blmn.score_pair(&masked, 0, 0).unwrap();
        // Inferred profile of drug 0 over targets: (0.9, 0.1) → (1, 0).
        let kt = DenseMatrix::from_rows(&st).unwrap();
        let kd = DenseMatrix::from_rows(&sd).unwrap();
        let dt = rls_oracle(&kt, &[1.0, 0.0], 1.0, 0);
        let td = rls_oracle(&kd, &[0.0, 1.0, 0.0], 1.0, 0);
        assert!((inferred.value - dt.max(td)).abs() < 1e-12);
        assert!(inferred.value > classic.value);
        assert!(classic.no_training_data && !inferred.no_training_data);
    }

    #[test]
    fn score_pair_matches_score_all_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ds = random_dataset(&mut rng, 6, 5, 0.3);
        for kind in [SimilarityKind::ChemSeq, SimilarityKind::Hybrid] {
            for inferring in [false, true] {
                let params = BlmParams {
                    neighbor_inferring: inferring,
                    ..BlmParams::default()
                };
                let s = BlmScorer::new(&ds, params, SimilaritySource::new(kind)).unwrap();
                let all = s.score_all(&ds.interactions).unwrap();
                for i in 0..6 {
                    for j in 0..5 {
                        let p = s.score_pair(&ds.interactions, i, j).unwrap();
                        assert_eq!(p.value.to_bits(), all.get(i, j).to_bits());
                    }
                }
            }
        }
    }

    #[test]
    fn other_local_classifiers_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ds = random_dataset(&mut rng, 6, 5, 0.4);
        for algo in [Algorithm::Svm, Algorithm::Knn, Algorithm::DecisionTree, Algorithm::Bagging] {
            let params = BlmParams {
                local_classifier: ClassifierConfig {
                    k: 3,
                    ensemble_size: 3,
                    ..ClassifierConfig::new(algo)
                },
                ..BlmParams::default()
            };
            let s = BlmScorer::new(&ds, params, SimilaritySource::default()).unwrap();
            let all = s.score_all(&ds.interactions).unwrap();
            let p = s.score_pair(&ds.interactions, 2, 3).unwrap();
            assert_eq!(p.value.to_bits(), all.get(2, 3).to_bits(), "{algo}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn max_dominates_each_side(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ds = random_dataset(&mut rng, 5, 4, 0.35);
            let s = BlmScorer::new(&ds, BlmParams::default(), SimilaritySource::default()).unwrap();
            let all = s.score_all(&ds.interactions).unwrap();
            let (dt, td) = s.one_sided(&ds.interactions).unwrap();
            for i in 0..5 {
                for j in 0..4 {
                    prop_assert!(all.get(i, j) >= dt[(i, j)] && all.get(i, j) >= td[(i, j)]);
                }
            }
        }

        #[test]
        fn inferred_profiles_are_bounded_and_monotone(seed in 0u64..10_000, bump in 0.0f64..0.5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ds = random_dataset(&mut rng, 6, 5, 0.4);
            let inf = Inferring::default();
            let l = infer_profile(&ds.drug_similarity, &ds.interactions, Side::Drugs, 0, &inf);
            prop_assert!(l.iter().all(|v| (0.0..=1.0).contains(v)));
            let before = infer_profile_raw(&ds.drug_similarity, &ds.interactions, Side::Drugs, 0, &inf);
            let mut m = ds.drug_similarity.as_matrix().clone();
            let v = (m[(0, 1)] + bump).min(1.0);
            m[(0, 1)] = v;
            m[(1, 0)] = v;
            let raised = SimilarityMatrix::new(m).unwrap();
            let after = infer_profile_raw(&raised, &ds.interactions, Side::Drugs, 0, &inf);
            for (b, a) in before.iter().zip(&after) {
                prop_assert!(a >= b);
            }
        }

        #[test]
        fn blmn_equals_blm_without_empty_profiles(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ds = random_dataset(&mut rng, 5, 4, 0.0);
            // Every drug and target gets degree ≥ 2.
            let mut a = InteractionMatrix::zeros(5, 4);
            for i in 0..5 {
                a.set(i, i % 4, true);
                a.set(i, (i + 1) % 4, true);
            }
            ds = ds.with_interactions(a).unwrap();
            let blm = BlmScorer::new(&ds, BlmParams::default(), SimilaritySource::default()).unwrap();
            let on = BlmParams { neighbor_inferring: true, ..BlmParams::default() };
            let blmn = BlmScorer::new(&ds, on, SimilaritySource::default()).unwrap();
            let p = crate::predictors::masked_sweep(&blm, &ds.interactions).unwrap();
            let q = crate::predictors::masked_sweep(&blmn, &ds.interactions).unwrap();
            for (x, y) in p.values.as_slice().iter().zip(q.values.as_slice()) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
