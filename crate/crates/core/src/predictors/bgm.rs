//! Bipartite graph model: embed drugs and targets in a shared space from a
//! graph-distance kernel, learn a ridge map from similarity rows to the
//! embedding, and score pairs by inner products of mapped vectors.

use std::collections::VecDeque;

use crate::datasets::{DtiDataset, InteractionMatrix, SimilarityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, DenseMatrix, RegularizedSolver};
use crate::predictors::blm::similarity_echo;
use crate::predictors::{Method, PairScore, PairScorer, ScoreMatrix};
use crate::similarity::{SimilarityKind, SimilaritySource};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BgmParams {
    /// Kernel bandwidth `h` in graph-distance units.
    pub bandwidth: f64,
    /// Number of embedding coordinates kept; all positive components when
    /// `None`.
    pub embedding_dim: Option<usize>,
    /// Ridge of the map from similarity rows to embedding coordinates.
    pub ridge: f64,
}

impl Default for BgmParams {
    fn default() -> Self {
        Self {
            bandwidth: 1.0,
            embedding_dim: None,
            ridge: 1e-6,
        }
    }
}

impl BgmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth > 0.0 && self.bandwidth.is_finite()) {
            return Err(Error::Config(format!("BGM bandwidth must be positive, got {}", self.bandwidth)));
        }
        if !(self.ridge > 0.0 && self.ridge.is_finite()) {
            return Err(Error::Config(format!("BGM ridge must be positive, got {}", self.ridge)));
        }
        if self.embedding_dim == Some(0) {
            return Err(Error::Config("BGM embedding dimension must be positive".into()));
        }
        Ok(())
    }
}

/// Kernel `exp(−d²/h²)` over shortest-path distances `d` on the bipartite
/// interaction graph. Nodes are the drugs followed by the targets;
/// unreachable pairs get 0.
pub fn bgm_graph_kernel(a: &InteractionMatrix, bandwidth: f64) -> DenseMatrix {
    let (nd, nt) = (a.n_drugs(), a.n_targets());
    let n = nd + nt;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in a.positives() {
        adjacency[i].push(nd + j);
        adjacency[nd + j].push(i);
    }
    let h2 = bandwidth * bandwidth;
    let mut k = DenseMatrix::zeros(n, n);
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for source in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (target, &d) in dist.iter().enumerate() {
            if d != usize::MAX {
                let d = d as f64;
                k[(source, target)] = (-d * d / h2).exp();
            }
        }
    }
    k
}

/// `U = ΓΛ^{1/2}` from the eigendecomposition of `K` with negative
/// eigenvalues clipped to zero, so `UUᵀ` is the PSD repair of `K`.
/// Columns follow descending eigenvalues; only positive ones are kept, at
/// most `dim` of them.
pub fn bgm_embedding(k: &DenseMatrix, dim: Option<usize>) -> Result<DenseMatrix> {
    let eig = sym_eigen(k)?;
    let kept: Vec<usize> = (0..eig.values.len())
        .filter(|&c| eig.values[c] > 0.0)
        .take(dim.unwrap_or(usize::MAX))
        .collect();
    let scale: Vec<f64> = kept.iter().map(|&c| eig.values[c].sqrt()).collect();
    Ok(DenseMatrix::from_fn(k.rows(), kept.len(), |r, c| {
        eig.vectors[(r, kept[c])] * scale[c]
    }))
}

/// Rows `rows` of `m`.
fn row_block(m: &DenseMatrix, rows: std::ops::Range<usize>) -> DenseMatrix {
    DenseMatrix::from_fn(rows.len(), m.cols(), |r, c| m[(rows.start + r, c)])
}

/// `S W` with `W = (SᵀS + λI)⁻¹ SᵀU`: each embedding coordinate regressed on
/// similarity rows, then every entity mapped through its own row.
fn mapped_embedding(s: &SimilarityMatrix, u: &DenseMatrix, ridge: f64) -> Result<DenseMatrix> {
    let s = s.as_matrix();
    let st = s.transpose();
    let gram = st.matmul(s)?.symmetrized();
    let solver = RegularizedSolver::new(&gram, ridge)?;
    let rhs = st.matmul(u)?;
    let mut w = DenseMatrix::zeros(rhs.rows(), rhs.cols());
    for c in 0..rhs.cols() {
        let col = solver.solve(&rhs.column(c))?;
        for (r, v) in col.into_iter().enumerate() {
            w[(r, c)] = v;
        }
    }
    s.matmul(&w)
}

fn bgm_scores(a: &InteractionMatrix, sd: &SimilarityMatrix, st: &SimilarityMatrix, params: &BgmParams) -> Result<DenseMatrix> {
    params.validate()?;
    let (nd, nt) = (a.n_drugs(), a.n_targets());
    if a.count() == 0 {
        log::warn!("BGM: the interaction graph is empty; every drug-target kernel entry is 0");
    }
    let k = bgm_graph_kernel(a, params.bandwidth);
    let u = bgm_embedding(&k, params.embedding_dim)?;
    let drugs = mapped_embedding(sd, &row_block(&u, 0..nd), params.ridge)?;
    let targets = mapped_embedding(st, &row_block(&u, nd..nd + nt), params.ridge)?;
    drugs.matmul(&targets.transpose())
}

/// BGM scores of every pair from the dataset's similarities and
/// interactions.
pub fn bgm_fit_predict(ds: &DtiDataset, params: &BgmParams) -> Result<ScoreMatrix> {
    BgmScorer::new(ds, *params, SimilaritySource::default())?.score_all(&ds.interactions)
}

pub struct BgmScorer<'a> {
    ds: &'a DtiDataset,
    params: BgmParams,
    source: SimilaritySource,
    fixed: Option<(SimilarityMatrix, SimilarityMatrix)>,
    echo: Vec<(String, String)>,
}

impl<'a> BgmScorer<'a> {
    pub fn new(ds: &'a DtiDataset, params: BgmParams, source: SimilaritySource) -> Result<Self> {
        params.validate()?;
        source.validate()?;
        let fixed = if source.kind == SimilarityKind::ChemSeq || !source.recompute_per_mask {
            Some(source.similarities(ds, &ds.interactions)?)
        } else {
            None
        };
        let mut echo = vec![
            ("similarity".to_string(), source.kind.to_string()),
            ("bandwidth".to_string(), params.bandwidth.to_string()),
            (
                "embedding_dim".to_string(),
                params.embedding_dim.map_or_else(|| "all".to_string(), |d| d.to_string()),
            ),
            ("ridge".to_string(), params.ridge.to_string()),
        ];
        echo.extend(similarity_echo(&source));
        Ok(Self {
            ds,
            params,
            source,
            fixed,
            echo,
        })
    }
}

impl PairScorer for BgmScorer<'_> {
    fn score_all(&self, a: &InteractionMatrix) -> Result<ScoreMatrix> {
        if a.n_drugs() != self.ds.n_drugs() || a.n_targets() != self.ds.n_targets() {
            return Err(Error::Input("interaction matrix does not match the dataset".into()));
        }
        let values = match &self.fixed {
            Some((sd, st)) => bgm_scores(a, sd, st, &self.params)?,
            None => {
                let (sd, st) = self.source.similarities(self.ds, a)?;
                bgm_scores(a, &sd, &st, &self.params)?
            }
        };
        let n = values.rows() * values.cols();
        ScoreMatrix::new(values, Method::Bgm, self.echo.clone(), vec![false; n])
    }

    /// The embedding depends on the whole graph, so a pair is scored by a
    /// full refit.
    fn score_pair(&self, a: &InteractionMatrix, i: usize, j: usize) -> Result<PairScore> {
        if i >= a.n_drugs() || j >= a.n_targets() {
            return Err(Error::Input(format!("pair ({i}, {j}) is outside the interaction matrix")));
        }
        Ok(PairScore {
            value: self.score_all(a)?.get(i, j),
            no_training_data: false,
        })
    }

    fn method(&self) -> Method {
        Method::Bgm
    }

    fn params(&self) -> &[(String, String)] {
        &self.echo
    }
}
