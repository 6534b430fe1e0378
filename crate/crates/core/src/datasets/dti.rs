use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::datasets::matrix_file::{read_labeled_matrix, write_labeled_matrix, LabeledMatrix};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Asymmetry up to this size is symmetrized silently; anything larger is
/// symmetrized with a warning.
pub const SILENT_ASYMMETRY: f64 = 1e-6;

/// Binary `n_d x n_t` matrix of known drug-target interactions.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix(DenseMatrix);

impl InteractionMatrix {
    pub fn new(values: DenseMatrix) -> Result<Self> {
        if let Some(pos) = values.as_slice().iter().position(|&v| v != 0.0 && v != 1.0) {
            let cols = values.cols().max(1);
            return Err(Error::Input(format!(
                "interaction value {} at ({}, {}) is not 0 or 1",
                values.as_slice()[pos],
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self(values))
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| f64::from(v)).collect())
            .collect();
        Self::new(DenseMatrix::from_rows(&rows)?)
    }

    pub fn zeros(n_drugs: usize, n_targets: usize) -> Self {
        Self(DenseMatrix::zeros(n_drugs, n_targets))
    }

    pub fn n_drugs(&self) -> usize {
        self.0.rows()
    }

    pub fn n_targets(&self) -> usize {
        self.0.cols()
    }

    pub fn get(&self, drug: usize, target: usize) -> bool {
        self.0[(drug, target)] == 1.0
    }

    pub fn set(&mut self, drug: usize, target: usize, known: bool) {
        self.0[(drug, target)] = if known { 1.0 } else { 0.0 };
    }

    /// Copy with the entry `(drug, target)` set to 0.
    pub fn masked(&self, drug: usize, target: usize) -> Self {
        let mut out = self.clone();
        out.set(drug, target, false);
        out
    }

    /// Interaction profile of a drug (its row).
    pub fn drug_profile(&self, drug: usize) -> &[f64] {
        self.0.row(drug)
    }

    /// Interaction profile of a target (its column).
    pub fn target_profile(&self, target: usize) -> Vec<f64> {
        self.0.column(target)
    }

    pub fn drug_degree(&self, drug: usize) -> usize {
        self.0.row(drug).iter().filter(|&&v| v == 1.0).count()
    }

    pub fn target_degree(&self, target: usize) -> usize {
        (0..self.n_drugs()).filter(|&i| self.get(i, target)).count()
    }

    pub fn count(&self) -> usize {
        self.0.as_slice().iter().filter(|&&v| v == 1.0).count()
    }

    pub fn positives(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n_drugs() {
            for j in 0..self.n_targets() {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }
}

/// Square symmetric similarity matrix with values in `[0, 1]` and unit
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix(DenseMatrix);

impl SimilarityMatrix {
    /// Checks the invariants without modifying the input.
    pub fn new(values: DenseMatrix) -> Result<Self> {
        values.require_square_symmetric(crate::linalg::SYMMETRY_TOLERANCE)?;
        for i in 0..values.rows() {
            if (values[(i, i)] - 1.0).abs() > 1e-9 {
                return Err(Error::Input(format!(
                    "similarity diagonal entry {i} is {} (expected 1)",
                    values[(i, i)]
                )));
            }
        }
        if values.as_slice().iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Input("similarity values must lie in [0, 1]".into()));
        }
        Ok(Self(values))
    }

    /// Symmetrizes as `(S + Sᵀ)/2`, clamps to `[0, 1]` and sets the diagonal
    /// to 1. Exactly symmetric, in-range inputs with unit diagonal come back
    /// unchanged.
    pub fn normalized(values: &DenseMatrix, label: &str) -> Result<Self> {
        if !values.is_square() {
            return Err(Error::Input(format!(
                "{label}: similarity matrix must be square, got {}x{}",
                values.rows(),
                values.cols()
            )));
        }
        let asym = values.max_asymmetry();
        if asym > SILENT_ASYMMETRY {
            log::warn!("{label}: similarity asymmetric by up to {asym:e}; symmetrizing");
        }
        let mut s = values.symmetrized();
        let mut diag_fix = 0.0_f64;
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                s[(i, j)] = s[(i, j)].clamp(0.0, 1.0);
            }
            diag_fix = diag_fix.max((s[(i, i)] - 1.0).abs());
            s[(i, i)] = 1.0;
        }
        if diag_fix > SILENT_ASYMMETRY {
            log::warn!("{label}: diagonal deviated from 1 by up to {diag_fix:e}; reset to 1");
        }
        Ok(Self(s))
    }

    /// Wraps a matrix produced by a construction that guarantees the
    /// invariants (e.g. Gaussian kernels, convex combinations).
    pub(crate) fn from_trusted(values: DenseMatrix) -> Self {
        debug_assert!(values.is_square());
        Self(values)
    }

    pub fn identity(n: usize) -> Self {
        Self(DenseMatrix::identity(n))
    }

    pub fn len(&self) -> usize {
        self.0.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.0.rows() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.0
    }

    fn reordered(&self, order: &[usize]) -> Self {
        Self(self.0.permuted(order, order))
    }
}

/// An interaction matrix with drug and target similarities.
#[derive(Debug, Clone, PartialEq)]
pub struct DtiDataset {
    pub name: String,
    pub drug_ids: Vec<String>,
    pub target_ids: Vec<String>,
    pub interactions: InteractionMatrix,
    pub drug_similarity: SimilarityMatrix,
    pub target_similarity: SimilarityMatrix,
}

impl DtiDataset {
    pub fn new(
        name: impl Into<String>,
        drug_ids: Vec<String>,
        target_ids: Vec<String>,
        interactions: InteractionMatrix,
        drug_similarity: SimilarityMatrix,
        target_similarity: SimilarityMatrix,
    ) -> Result<Self> {
        let (nd, nt) = (drug_ids.len(), target_ids.len());
        if interactions.n_drugs() != nd || interactions.n_targets() != nt {
            return Err(Error::Input(format!(
                "interaction matrix is {}x{} but there are {nd} drugs and {nt} targets",
                interactions.n_drugs(),
                interactions.n_targets()
            )));
        }
        if drug_similarity.len() != nd || target_similarity.len() != nt {
            return Err(Error::Input(format!(
                "similarity sizes {}/{} do not match {nd} drugs / {nt} targets",
                drug_similarity.len(),
                target_similarity.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            drug_ids,
            target_ids,
            interactions,
            drug_similarity,
            target_similarity,
        })
    }

    /// Dataset with generated ids `D0..`, `T0..`.
    pub fn from_parts(
        interactions: InteractionMatrix,
        drug_similarity: SimilarityMatrix,
        target_similarity: SimilarityMatrix,
    ) -> Result<Self> {
        let drug_ids = (0..interactions.n_drugs()).map(|i| format!("D{i}")).collect();
        let target_ids = (0..interactions.n_targets()).map(|j| format!("T{j}")).collect();
        Self::new(
            "synthetic",
            drug_ids,
            target_ids,
            interactions,
            drug_similarity,
            target_similarity,
        )
    }

    pub fn n_drugs(&self) -> usize {
        self.drug_ids.len()
    }

    pub fn n_targets(&self) -> usize {
        self.target_ids.len()
    }

    /// Copy with a different interaction matrix of the same shape.
    pub fn with_interactions(&self, interactions: InteractionMatrix) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.drug_ids.clone(),
            self.target_ids.clone(),
            interactions,
            self.drug_similarity.clone(),
            self.target_similarity.clone(),
        )
    }
}

/// Summary statistics in the layout of the benchmark statistics table.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub n_drugs: usize,
    pub n_targets: usize,
    pub interactions: usize,
    /// `E / n_d`
    pub mean_drug_degree: f64,
    /// `E / n_t`
    pub mean_target_degree: f64,
    /// Percentage of drugs with exactly one known target.
    pub pct_drug_degree_one: f64,
    /// Percentage of targets with exactly one known drug.
    pub pct_target_degree_one: f64,
}

pub fn stats(ds: &DtiDataset) -> DatasetStats {
    let a = &ds.interactions;
    let (nd, nt) = (a.n_drugs(), a.n_targets());
    let e = a.count();
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let drugs_one = (0..nd).filter(|&i| a.drug_degree(i) == 1).count();
    let targets_one = (0..nt).filter(|&j| a.target_degree(j) == 1).count();
    DatasetStats {
        n_drugs: nd,
        n_targets: nt,
        interactions: e,
        mean_drug_degree: ratio(e, nd),
        mean_target_degree: ratio(e, nt),
        pct_drug_degree_one: 100.0 * ratio(drugs_one, nd),
        pct_target_degree_one: 100.0 * ratio(targets_one, nt),
    }
}

fn index_of(ids: &[String], path: &Path) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(ids.len());
    for (k, id) in ids.iter().enumerate() {
        if map.insert(id.clone(), k).is_some() {
            return Err(Error::Format {
                path: path.to_path_buf(),
                message: format!("duplicate id {id:?}"),
            });
        }
    }
    Ok(map)
}

fn load_similarity(path: &Path, label: &str) -> Result<(Vec<String>, SimilarityMatrix)> {
    let m = read_labeled_matrix(path)?;
    if m.row_ids.len() != m.col_ids.len() {
        return Err(Error::Format {
            path: path.to_path_buf(),
            message: format!(
                "similarity matrix must be square, got {}x{}",
                m.row_ids.len(),
                m.col_ids.len()
            ),
        });
    }
    let rows = index_of(&m.row_ids, path)?;
    index_of(&m.col_ids, path)?;
    // Columns are matched to rows by id, not by position.
    let mut col_order = Vec::with_capacity(m.col_ids.len());
    for id in &m.row_ids {
        let k = m.col_ids.iter().position(|c| c == id).ok_or_else(|| Error::Format {
            path: path.to_path_buf(),
            message: format!("row id {id:?} has no matching column"),
        })?;
        col_order.push(k);
    }
    debug_assert_eq!(rows.len(), col_order.len());
    let row_order: Vec<usize> = (0..m.row_ids.len()).collect();
    let values = m.values.permuted(&row_order, &col_order);
    let sim = SimilarityMatrix::normalized(&values, label)?;
    Ok((m.row_ids, sim))
}

fn order_by(ids: &[String], lookup: &HashMap<String, usize>, path: &Path, what: &str) -> Result<Vec<usize>> {
    ids.iter()
        .map(|id| {
            lookup.get(id).copied().ok_or_else(|| Error::Format {
                path: path.to_path_buf(),
                message: format!("{what} id {id:?} is missing from the similarity file"),
            })
        })
        .collect()
}

/// Loads an interaction file and the two similarity files.
///
/// Ids are matched by header string. The interaction file may be oriented
/// either way (drugs as rows or as columns); orientation is decided by which
/// similarity file its row ids belong to.
pub fn load_dti(interaction_path: &Path, drug_sim_path: &Path, target_sim_path: &Path) -> Result<DtiDataset> {
    let a = read_labeled_matrix(interaction_path)?;
    let (drug_sim_ids, drug_sim) = load_similarity(drug_sim_path, "drug similarity")?;
    let (target_sim_ids, target_sim) = load_similarity(target_sim_path, "target similarity")?;
    let drug_lookup = index_of(&drug_sim_ids, drug_sim_path)?;
    let target_lookup = index_of(&target_sim_ids, target_sim_path)?;
    index_of(&a.row_ids, interaction_path)?;
    index_of(&a.col_ids, interaction_path)?;

    for (k, v) in a.values.as_slice().iter().enumerate() {
        if *v != 0.0 && *v != 1.0 {
            let cols = a.values.cols();
            return Err(Error::Parse {
                path: interaction_path.to_path_buf(),
                line: k / cols + 2,
                column: k % cols + 2,
                message: format!("interaction value {v} is not 0 or 1"),
            });
        }
    }

    let rows_are_drugs = a.row_ids.iter().all(|id| drug_lookup.contains_key(id));
    let rows_are_targets = a.row_ids.iter().all(|id| target_lookup.contains_key(id));
    let (drug_ids, target_ids, values) = if rows_are_drugs || !rows_are_targets {
        (a.row_ids, a.col_ids, a.values)
    } else {
        log::info!("interaction file lists targets as rows; transposing");
        (a.col_ids, a.row_ids, a.values.transpose())
    };

    let drug_order = order_by(&drug_ids, &drug_lookup, interaction_path, "drug")?;
    let target_order = order_by(&target_ids, &target_lookup, interaction_path, "target")?;
    if drug_order.len() != drug_sim.len() {
        return Err(Error::Format {
            path: drug_sim_path.to_path_buf(),
            message: format!(
                "drug similarity covers {} drugs, interaction file has {}",
                drug_sim.len(),
                drug_order.len()
            ),
        });
    }
    if target_order.len() != target_sim.len() {
        return Err(Error::Format {
            path: target_sim_path.to_path_buf(),
            message: format!(
                "target similarity covers {} targets, interaction file has {}",
                target_sim.len(),
                target_order.len()
            ),
        });
    }

    let name = interaction_path
        .file_stem()
        .and_then(|s| s.to_str())
        .map(|s| s.split('_').next().unwrap_or(s).to_string())
        .unwrap_or_default();
    DtiDataset::new(
        name,
        drug_ids,
        target_ids,
        InteractionMatrix::new(values)?,
        drug_sim.reordered(&drug_order),
        target_sim.reordered(&target_order),
    )
}

/// Paths of the three files making up a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetFiles {
    pub interactions: PathBuf,
    pub drug_similarity: PathBuf,
    pub target_similarity: PathBuf,
}

impl DatasetFiles {
    /// File names of the published benchmark distribution for a dataset
    /// prefix (`nr`, `gpcr`, `ic`, `e`).
    pub fn benchmark(dir: &Path, prefix: &str) -> Self {
        Self {
            interactions: dir.join(format!("{prefix}_admat_dgc.txt")),
            drug_similarity: dir.join(format!("{prefix}_simmat_dc.txt")),
            target_similarity: dir.join(format!("{prefix}_simmat_dg.txt")),
        }
    }

    pub fn exist(&self) -> bool {
        self.interactions.is_file() && self.drug_similarity.is_file() && self.target_similarity.is_file()
    }

    pub fn load(&self) -> Result<DtiDataset> {
        load_dti(&self.interactions, &self.drug_similarity, &self.target_similarity)
    }
}

/// Writes a dataset as three TSV files (drugs as interaction rows) that
/// [`load_dti`] reads back exactly.
pub fn save_dti(ds: &DtiDataset, files: &DatasetFiles) -> Result<()> {
    for p in [&files.interactions, &files.drug_similarity, &files.target_similarity] {
        if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    write_labeled_matrix(
        &files.interactions,
        &LabeledMatrix {
            row_ids: ds.drug_ids.clone(),
            col_ids: ds.target_ids.clone(),
            values: ds.interactions.as_matrix().clone(),
        },
        &[],
    )?;
    write_labeled_matrix(
        &files.drug_similarity,
        &LabeledMatrix {
            row_ids: ds.drug_ids.clone(),
            col_ids: ds.drug_ids.clone(),
            values: ds.drug_similarity.as_matrix().clone(),
        },
        &[],
    )?;
    write_labeled_matrix(
        &files.target_similarity,
        &LabeledMatrix {
            row_ids: ds.target_ids.clone(),
            col_ids: ds.target_ids.clone(),
            values: ds.target_similarity.as_matrix().clone(),
        },
        &[],
    )
}
