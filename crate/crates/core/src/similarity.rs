//! Drug and target similarities derived from the interaction network, hybrid
//! combinations with chemical/sequence similarity, and kernel preparation.

use std::fmt;
use std::str::FromStr;

use crate::datasets::{DtiDataset, InteractionMatrix, SimilarityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{psd_repair, squared_distance, DenseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Drugs,
    Targets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimilarityKind {
    /// Chemical similarity for drugs, sequence similarity for targets.
    #[default]
    ChemSeq,
    /// Gaussian interaction-profile similarity from the known interactions.
    Network,
    /// Convex combination of the two.
    Hybrid,
}

impl SimilarityKind {
    pub fn name(self) -> &'static str {
        match self {
            SimilarityKind::ChemSeq => "chem-seq",
            SimilarityKind::Network => "network",
            SimilarityKind::Hybrid => "hybrid",
        }
    }

    /// Whether the similarity depends on the interaction matrix.
    pub fn uses_network(self) -> bool {
        self != SimilarityKind::ChemSeq
    }
}

impl fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "chem-seq" | "chemseq" => Ok(SimilarityKind::ChemSeq),
            "network" | "network-based" => Ok(SimilarityKind::Network),
            "hybrid" => Ok(SimilarityKind::Hybrid),
            _ => Err(Error::Config(format!("unknown similarity source {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilaritySource {
    pub kind: SimilarityKind,
    /// Weight on the chemical/sequence part of a hybrid similarity.
    pub hybrid_weight: f64,
    /// Bandwidth scale `γ₀` of the interaction-profile kernel.
    pub gip_bandwidth_scale: f64,
    /// Recompute network similarities from each masked interaction matrix
    /// during leave-one-out; when false they are computed once from the full
    /// matrix.
    pub recompute_per_mask: bool,
}

impl Default for SimilaritySource {
    fn default() -> Self {
        Self {
            kind: SimilarityKind::ChemSeq,
            hybrid_weight: 0.5,
            gip_bandwidth_scale: 1.0,
            recompute_per_mask: true,
        }
    }
}

impl SimilaritySource {
    pub fn new(kind: SimilarityKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.hybrid_weight) {
            return Err(Error::Config(format!(
                "hybrid weight must lie in [0, 1], got {}",
                self.hybrid_weight
            )));
        }
        if !(self.gip_bandwidth_scale > 0.0 && self.gip_bandwidth_scale.is_finite()) {
            return Err(Error::Config(format!(
                "profile kernel bandwidth scale must be positive, got {}",
                self.gip_bandwidth_scale
            )));
        }
        Ok(())
    }

    /// Drug and target similarities for the interaction matrix `a` (which
    /// may be a masked copy of the dataset's).
    pub fn similarities(&self, ds: &DtiDataset, a: &InteractionMatrix) -> Result<(SimilarityMatrix, SimilarityMatrix)> {
        self.validate()?;
        Ok(match self.kind {
            SimilarityKind::ChemSeq => (ds.drug_similarity.clone(), ds.target_similarity.clone()),
            SimilarityKind::Network => (
                network_similarity(a, Side::Drugs, self.gip_bandwidth_scale)?,
                network_similarity(a, Side::Targets, self.gip_bandwidth_scale)?,
            ),
            SimilarityKind::Hybrid => (
                combine(
                    &ds.drug_similarity,
                    &network_similarity(a, Side::Drugs, self.gip_bandwidth_scale)?,
                    self.hybrid_weight,
                )?,
                combine(
                    &ds.target_similarity,
                    &network_similarity(a, Side::Targets, self.gip_bandwidth_scale)?,
                    self.hybrid_weight,
                )?,
            ),
        })
    }
}

/// `exp(−γ‖a_i − a_j‖²)` over interaction profiles (rows of `A` for drugs,
/// columns for targets) with `γ = γ₀ · m / Σ‖a_i‖²` over the `m` profiles.
pub fn network_similarity(a: &InteractionMatrix, side: Side, gamma0: f64) -> Result<SimilarityMatrix> {
    if !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(Error::Config(format!("bandwidth scale must be positive, got {gamma0}")));
    }
    let profiles: Vec<Vec<f64>> = match side {
        Side::Drugs => (0..a.n_drugs()).map(|i| a.drug_profile(i).to_vec()).collect(),
        Side::Targets => (0..a.n_targets()).map(|j| a.target_profile(j)).collect(),
    };
    let m = profiles.len();
    let total: f64 = profiles.iter().map(|p| p.iter().map(|v| v * v).sum::<f64>()).sum();
    if total == 0.0 {
        return Err(Error::Config(
            "interaction matrix has no known interactions; the profile kernel bandwidth is undefined".into(),
        ));
    }
    let gamma = gamma0 * m as f64 / total;
    let mut s = DenseMatrix::identity(m);
    for i in 0..m {
        for j in (i + 1)..m {
            let v = (-gamma * squared_distance(&profiles[i], &profiles[j])).exp();
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    Ok(SimilarityMatrix::from_trusted(s))
}

/// `w · bio + (1 − w) · net`.
pub fn combine(bio: &SimilarityMatrix, net: &SimilarityMatrix, w: f64) -> Result<SimilarityMatrix> {
    if bio.len() != net.len() {
        return Err(Error::Input(format!(
            "cannot combine {0}x{0} and {1}x{1} similarities",
            bio.len(),
            net.len()
        )));
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Config(format!("combination weight must lie in [0, 1], got {w}")));
    }
    let mut s = bio.as_matrix().lincomb(w, net.as_matrix(), 1.0 - w)?.symmetrized();
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            s[(i, j)] = s[(i, j)].clamp(0.0, 1.0);
        }
    }
    Ok(SimilarityMatrix::from_trusted(s))
}

/// The similarity projected onto the PSD cone, ready for kernel methods.
pub fn as_kernel(s: &SimilarityMatrix) -> Result<DenseMatrix> {
    psd_repair(s.as_matrix())
}
