//! Pair features for casting interaction prediction as binary
//! classification: for each (drug similarity, target similarity) source, the
//! geometric-mean similarity of a candidate pair to the known interactions.

use std::fmt;
use std::str::FromStr;

use crate::datasets::{DtiDataset, InteractionMatrix, SimilarityMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    Max,
    Mean,
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Max => "max",
            Aggregation::Mean => "mean",
        })
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" => Ok(Aggregation::Max),
            "mean" => Ok(Aggregation::Mean),
            _ => Err(Error::Config(format!("unknown aggregation {s:?} (expected max or mean)"))),
        }
    }
}

/// Features of pair `(i, j)` from the dataset's own drug and target
/// similarities.
pub fn pair_features(ds: &DtiDataset, i: usize, j: usize, aggregation: Aggregation) -> Result<Vec<f64>> {
    pair_features_with(
        &[(&ds.drug_similarity, &ds.target_similarity)],
        &ds.interactions,
        i,
        j,
        aggregation,
    )
}

/// One feature per source: the max (or mean) over known interactions
/// `(d', t') ≠ (i, j)` of `√(S_d(i, d') · S_t(j, t'))`.
pub fn pair_features_with(
    sources: &[(&SimilarityMatrix, &SimilarityMatrix)],
    a: &InteractionMatrix,
    i: usize,
    j: usize,
    aggregation: Aggregation,
) -> Result<Vec<f64>> {
    if i >= a.n_drugs() || j >= a.n_targets() {
        return Err(Error::Input(format!("pair ({i}, {j}) is outside the interaction matrix")));
    }
    for (sd, st) in sources {
        if sd.len() != a.n_drugs() || st.len() != a.n_targets() {
            return Err(Error::Input("similarity sizes do not match the interaction matrix".into()));
        }
    }
    let known: Vec<(usize, usize)> = a.positives().into_iter().filter(|&p| p != (i, j)).collect();
    if known.is_empty() {
        log::warn!("pair ({i}, {j}): no other known interactions; features are zero");
        return Ok(vec![0.0; sources.len()]);
    }
    Ok(sources
        .iter()
        .map(|(sd, st)| {
            let values = known.iter().map(|&(d, t)| (sd.get(i, d) * st.get(j, t)).max(0.0).sqrt());
            match aggregation {
                Aggregation::Max => values.fold(0.0, f64::max),
                Aggregation::Mean => values.sum::<f64>() / known.len() as f64,
            }
        })
        .collect())
}
