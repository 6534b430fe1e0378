//! Leave-one-out cross validation over drug-target pairs.

use rayon::ThreadPoolBuilder;

use crate::datasets::DtiDataset;
use crate::error::{Error, Result};
use crate::predictors::{masked_sweep, PredictorConfig, ScoreMatrix};

/// Scores every pair `(i, j)` of the dataset with `a_ij` masked to 0, using
/// at most `workers` threads (all available cores when 0). Results are
/// written by index, so they do not depend on `workers`.
pub fn loocv(ds: &DtiDataset, config: &PredictorConfig, workers: usize) -> Result<ScoreMatrix> {
    let pool = ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} worker threads: {e}")))?;
    pool.install(|| {
        let scorer = config.scorer(ds)?;
        masked_sweep(scorer.as_ref(), &ds.interactions)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{InteractionMatrix, SimilarityMatrix};
    use crate::linalg::DenseMatrix;
    use crate::predictors::Method;
    use crate::similarity::{SimilarityKind, SimilaritySource};

    fn toy() -> DtiDataset {
        let a = InteractionMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 1]]).unwrap();
        let sd = DenseMatrix::from_rows(&[vec![1.0, 0.2, 0.5], vec![0.2, 1.0, 0.3], vec![0.5, 0.3, 1.0]]).unwrap();
        let st = DenseMatrix::from_fn(4, 4, |p, q| if p == q { 1.0 } else { 0.9f64.powi((p as i32 - q as i32).abs()) });
        DtiDataset::from_parts(a, SimilarityMatrix::new(sd).unwrap(), SimilarityMatrix::new(st).unwrap()).unwrap()
    }

    #[test]
    fn single_pair_dataset() {
        let ds = DtiDataset::from_parts(
            InteractionMatrix::from_rows(&[vec![1]]).unwrap(),
            SimilarityMatrix::identity(1),
            SimilarityMatrix::identity(1),
        )
        .unwrap();
        let p = loocv(&ds, &PredictorConfig::new(Method::Blmn, SimilaritySource::default()), 1).unwrap();
        assert_eq!(p.values.as_slice(), &[0.0]);
    }

    #[test]
    fn held_out_entry_is_never_read() {
        // Flipping the held-out entry must not change its own score.
        let ds = toy();
        for method in Method::ALL {
            for kind in [SimilarityKind::ChemSeq, SimilarityKind::Network, SimilarityKind::Hybrid] {
                let cfg = PredictorConfig::new(method, SimilaritySource::new(kind));
                let base = loocv(&ds, &cfg, 2).unwrap();
                for i in 0..3 {
                    for j in 0..4 {
                        let mut poisoned = ds.interactions.clone();
                        poisoned.set(i, j, !ds.interactions.get(i, j));
                        if poisoned.count() == 0 {
                            continue;
                        }
                        let other = loocv(&ds.with_interactions(poisoned).unwrap(), &cfg, 2).unwrap();
                        assert_eq!(
                            base.get(i, j).to_bits(),
                            other.get(i, j).to_bits(),
                            "{method} {kind} ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let ds = toy();
        for method in Method::ALL {
            let cfg = PredictorConfig::new(method, SimilaritySource::new(SimilarityKind::Hybrid));
            let one = loocv(&ds, &cfg, 1).unwrap();
            let many = loocv(&ds, &cfg, 8).unwrap();
            assert_eq!(one, many);
        }
    }

    #[test]
    fn errors_carry_the_pair() {
        // One interaction: masking it leaves an empty network.
        let ds = DtiDataset::from_parts(
            InteractionMatrix::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap(),
            SimilarityMatrix::identity(2),
            SimilarityMatrix::identity(2),
        )
        .unwrap();
        let cfg = PredictorConfig::new(Method::Blm, SimilaritySource::new(SimilarityKind::Network));
        match loocv(&ds, &cfg, 1) {
            Err(Error::AtPair { drug: 0, target: 0, source }) => assert!(matches!(*source, Error::Config(_))),
            other => panic!("expected a pair error, got {other:?}"),
        }
    }
}
