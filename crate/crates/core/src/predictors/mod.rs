//! Drug-target interaction predictors: the bipartite graph model (BGM), the
//! bipartite local model (BLM), its neighbor-inferring variant (BLMN), and
//! similarity-based pair features.
//!
//! Every predictor implements [`PairScorer`]. `score_pair(a, i, j)` equals
//! `score_all(a)` at `(i, j)` to the last bit, so a leave-one-out sweep only
//! needs per-pair calls for the entries that masking actually changes.

mod bgm;
mod blm;
mod features;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

pub use bgm::{bgm_fit_predict, bgm_graph_kernel, bgm_embedding, BgmParams, BgmScorer};
pub use blm::{
    blm_predict_pair, blmn_predict_all, infer_profile, infer_profile_raw, BlmParams, BlmScorer, Combine, Inferring,
    InferringMode,
};
pub use features::{pair_features, pair_features_with, Aggregation};

use crate::datasets::{write_labeled_matrix, DtiDataset, InteractionMatrix, LabeledMatrix};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::similarity::SimilaritySource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    Bgm,
    Blm,
    #[default]
    Blmn,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Bgm, Method::Blm, Method::Blmn];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bgm => "bgm",
            Method::Blm => "blm",
            Method::Blmn => "blmn",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bgm" => Ok(Method::Bgm),
            "blm" => Ok(Method::Blm),
            "blmn" => Ok(Method::Blmn),
            _ => Err(Error::Config(format!("unknown method {s:?} (expected bgm, blm or blmn)"))),
        }
    }
}

/// Predicted scores `p_ij` for every drug-target pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    pub values: DenseMatrix,
    pub method: Method,
    /// Parameter echo, in a stable order.
    pub params: Vec<(String, String)>,
    /// Row-major flags: a local model of the pair had no training data and
    /// scored 0.
    pub no_training_data: Vec<bool>,
}

impl ScoreMatrix {
    pub fn new(
        values: DenseMatrix,
        method: Method,
        params: Vec<(String, String)>,
        no_training_data: Vec<bool>,
    ) -> Result<Self> {
        if let Some(pos) = values.as_slice().iter().position(|v| !v.is_finite()) {
            let cols = values.cols().max(1);
            return Err(Error::Numeric(format!(
                "{method} produced a non-finite score at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        if no_training_data.len() != values.rows() * values.cols() {
            return Err(Error::Input("flag vector does not match the score matrix".into()));
        }
        Ok(Self {
            values,
            method,
            params,
            no_training_data,
        })
    }

    pub fn n_drugs(&self) -> usize {
        self.values.rows()
    }

    pub fn n_targets(&self) -> usize {
        self.values.cols()
    }

    pub fn get(&self, drug: usize, target: usize) -> f64 {
        self.values[(drug, target)]
    }

    pub fn no_training_data_count(&self) -> usize {
        self.no_training_data.iter().filter(|&&f| f).count()
    }

    /// Header lines echoing the method and its parameters.
    pub fn header(&self) -> Vec<String> {
        let mut lines = vec![format!("method\t{}", self.method)];
        lines.extend(self.params.iter().map(|(k, v)| format!("{k}\t{v}")));
        lines
    }

    /// Drugs as rows, targets as columns, scores at full precision.
    pub fn write_matrix(&self, path: &Path, ds: &DtiDataset, comments: &[String]) -> Result<()> {
        self.check_dataset(ds)?;
        let mut header = self.header();
        header.extend(comments.iter().cloned());
        let m = LabeledMatrix {
            row_ids: ds.drug_ids.clone(),
            col_ids: ds.target_ids.clone(),
            values: self.values.clone(),
        };
        write_labeled_matrix(path, &m, &header)
    }

    /// One line per pair: drug, target, score, known label.
    pub fn render_long(&self, ds: &DtiDataset, truth: &InteractionMatrix, comments: &[String]) -> Result<String> {
        self.check_dataset(ds)?;
        if truth.n_drugs() != self.n_drugs() || truth.n_targets() != self.n_targets() {
            return Err(Error::Input("truth matrix does not match the score matrix".into()));
        }
        let mut out = String::new();
        for line in self.header().iter().chain(comments) {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("drug\ttarget\tscore\tknown\n");
        for i in 0..self.n_drugs() {
            for j in 0..self.n_targets() {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    ds.drug_ids[i],
                    ds.target_ids[j],
                    self.get(i, j),
                    u8::from(truth.get(i, j))
                ));
            }
        }
        Ok(out)
    }

    pub fn write_long(&self, path: &Path, ds: &DtiDataset, truth: &InteractionMatrix, comments: &[String]) -> Result<()> {
        let text = self.render_long(ds, truth, comments)?;
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    fn check_dataset(&self, ds: &DtiDataset) -> Result<()> {
        if ds.n_drugs() != self.n_drugs() || ds.n_targets() != self.n_targets() {
            return Err(Error::Input(format!(
                "scores are {}x{}, dataset is {}x{}",
                self.n_drugs(),
                self.n_targets(),
                ds.n_drugs(),
                ds.n_targets()
            )));
        }
        Ok(())
    }
}

/// Score of one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub value: f64,
    pub no_training_data: bool,
}

/// A predictor evaluated against an arbitrary (possibly masked) interaction
/// matrix of the dataset's shape.
pub trait PairScorer: Sync {
    fn score_all(&self, a: &InteractionMatrix) -> Result<ScoreMatrix>;

    /// Bit-identical to `score_all(a)` at `(i, j)`.
    fn score_pair(&self, a: &InteractionMatrix, i: usize, j: usize) -> Result<PairScore>;

    fn method(&self) -> Method;

    fn params(&self) -> &[(String, String)];
}

/// Scores every pair with its own entry of `a` masked to 0. Masking leaves
/// zero entries unchanged, so those come from one unmasked pass; each known
/// interaction is re-scored from its masked matrix. Runs on the current
/// rayon pool and assembles results by index.
pub fn masked_sweep(scorer: &dyn PairScorer, a: &InteractionMatrix) -> Result<ScoreMatrix> {
    let mut out = scorer.score_all(a)?;
    let positives = a.positives();
    let held_out = positives
        .par_iter()
        .map(|&(i, j)| {
            scorer.score_pair(&a.masked(i, j), i, j).map_err(|e| Error::AtPair {
                drug: i,
                target: j,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nt = a.n_targets();
    for (&(i, j), p) in positives.iter().zip(held_out) {
        out.values[(i, j)] = p.value;
        out.no_training_data[i * nt + j] = p.no_training_data;
    }
    ScoreMatrix::new(out.values, out.method, out.params, out.no_training_data)
}

/// Everything needed to build a predictor for a dataset.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictorConfig {
    pub method: Method,
    pub similarity: SimilaritySource,
    pub bgm: BgmParams,
    /// `neighbor_inferring` is set from `method`.
    pub blm: BlmParams,
}

impl PredictorConfig {
    pub fn new(method: Method, similarity: SimilaritySource) -> Self {
        Self {
            method,
            similarity,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.similarity.validate()?;
        match self.method {
            Method::Bgm => self.bgm.validate(),
            Method::Blm | Method::Blmn => self.blm.validate(),
        }
    }

    pub fn scorer<'a>(&self, ds: &'a DtiDataset) -> Result<Box<dyn PairScorer + 'a>> {
        self.validate()?;
        Ok(match self.method {
            Method::Bgm => Box::new(BgmScorer::new(ds, self.bgm, self.similarity)?),
            Method::Blm | Method::Blmn => {
                let params = BlmParams {
                    neighbor_inferring: self.method == Method::Blmn,
                    ..self.blm.clone()
                };
                Box::new(BlmScorer::new(ds, params, self.similarity)?)
            }
        })
    }

    /// Scores from the full interaction matrix, without masking.
    pub fn predict(&self, ds: &DtiDataset) -> Result<ScoreMatrix> {
        self.scorer(ds)?.score_all(&ds.interactions)
    }
}
