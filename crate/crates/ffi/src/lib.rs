//! C ABI over `dti-core`.
//!
//! Datasets and score matrices cross the boundary as opaque handles owned by
//! the caller and released with the matching `*_free` function. Every
//! fallible call returns a [`DtiStatus`]; on failure the message is available
//! from [`dti_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use dti_core::classifiers::{Algorithm, ClassifierConfig};
use dti_core::datasets::{load_dti, stats, DtiDataset as CoreDataset};
use dti_core::evaluation::{loocv, roc_pr, AuprMode};
use dti_core::predictors::{BgmParams, BlmParams, Combine, Inferring, InferringMode, Method, PredictorConfig, ScoreMatrix};
use dti_core::similarity::{SimilarityKind, SimilaritySource};
use dti_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiStatus {
    Ok = 0,
    /// A required pointer argument was null.
    ErrNull = 1,
    ErrInput = 2,
    ErrFormat = 3,
    ErrParse = 4,
    ErrConfig = 5,
    ErrNumeric = 6,
    ErrConvergence = 7,
    ErrMetric = 8,
    ErrIo = 9,
    /// A Rust panic was caught at the boundary.
    ErrPanic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiMethod {
    Bgm = 0,
    Blm = 1,
    Blmn = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiSimilarity {
    ChemSeq = 0,
    Network = 1,
    Hybrid = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiLocalModel {
    Rls = 0,
    Svm = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiCombine {
    Max = 0,
    Mean = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtiInferringMode {
    Linear = 0,
    Exponential = 1,
}

/// Predictor settings; start from [`dti_predictor_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DtiPredictorOptions {
    pub method: DtiMethod,
    pub similarity: DtiSimilarity,
    /// Weight on chemical/sequence similarity in the hybrid.
    pub hybrid_weight: f64,
    /// Scale of the interaction-profile kernel bandwidth.
    pub gip_scale: f64,
    /// Recompute network similarity for each masked matrix.
    pub recompute_network_per_mask: bool,
    /// BGM graph kernel bandwidth.
    pub bandwidth: f64,
    /// BGM embedding dimension; 0 keeps every positive component.
    pub embedding_dim: usize,
    pub bgm_ridge: f64,
    pub local_model: DtiLocalModel,
    /// RLS regularization.
    pub delta: f64,
    /// SVM box constraint.
    pub svm_c: f64,
    pub combine: DtiCombine,
    pub inferring_mode: DtiInferringMode,
    pub beta: f64,
    pub neighbor_threshold: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DtiDatasetStats {
    pub n_drugs: usize,
    pub n_targets: usize,
    pub interactions: usize,
    pub mean_drug_degree: f64,
    pub mean_target_degree: f64,
    pub pct_drug_degree_one: f64,
    pub pct_target_degree_one: f64,
}

/// Opaque dataset handle.
pub struct DtiDataset {
    inner: CoreDataset,
}

/// Opaque score-matrix handle.
pub struct DtiScores {
    inner: ScoreMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DtiStatus {
    match err {
        Error::Input(_) => DtiStatus::ErrInput,
        Error::Format { .. } => DtiStatus::ErrFormat,
        Error::Parse { .. } => DtiStatus::ErrParse,
        Error::Config(_) => DtiStatus::ErrConfig,
        Error::Numeric(_) => DtiStatus::ErrNumeric,
        Error::Convergence { .. } => DtiStatus::ErrConvergence,
        Error::Metric(_) => DtiStatus::ErrMetric,
        Error::Io { .. } => DtiStatus::ErrIo,
        Error::AtPair { source, .. } => status_of(source),
    }
}

/// Runs `f`, recording any error or panic for [`dti_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), (DtiStatus, String)>) -> DtiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DtiStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("panic: {message}"));
            DtiStatus::ErrPanic
        }
    }
}

fn core_err(err: Error) -> (DtiStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (DtiStatus, String) {
    (DtiStatus::ErrNull, format!("{name} is null"))
}

unsafe fn path_arg(p: *const c_char, name: &str) -> Result<PathBuf, (DtiStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DtiStatus::ErrInput, format!("{name} is not valid UTF-8")))?;
    Ok(PathBuf::from(s))
}

impl DtiPredictorOptions {
    fn to_config(self) -> PredictorConfig {
        let method = match self.method {
            DtiMethod::Bgm => Method::Bgm,
            DtiMethod::Blm => Method::Blm,
            DtiMethod::Blmn => Method::Blmn,
        };
        let kind = match self.similarity {
            DtiSimilarity::ChemSeq => SimilarityKind::ChemSeq,
            DtiSimilarity::Network => SimilarityKind::Network,
            DtiSimilarity::Hybrid => SimilarityKind::Hybrid,
        };
        let algorithm = match self.local_model {
            DtiLocalModel::Rls => Algorithm::Rls,
            DtiLocalModel::Svm => Algorithm::Svm,
        };
        PredictorConfig {
            method,
            similarity: SimilaritySource {
                kind,
                hybrid_weight: self.hybrid_weight,
                gip_bandwidth_scale: self.gip_scale,
                recompute_per_mask: self.recompute_network_per_mask,
            },
            bgm: BgmParams {
                bandwidth: self.bandwidth,
                embedding_dim: (self.embedding_dim > 0).then_some(self.embedding_dim),
                ridge: self.bgm_ridge,
            },
            blm: BlmParams {
                local_classifier: ClassifierConfig {
                    delta: self.delta,
                    c: self.svm_c,
                    seed: self.seed,
                    ..ClassifierConfig::new(algorithm)
                },
                combine: match self.combine {
                    DtiCombine::Max => Combine::Max,
                    DtiCombine::Mean => Combine::Mean,
                },
                neighbor_inferring: method == Method::Blmn,
                inferring: Inferring {
                    mode: match self.inferring_mode {
                        DtiInferringMode::Linear => InferringMode::Linear,
                        DtiInferringMode::Exponential => InferringMode::Exponential,
                    },
                    beta: self.beta,
                    threshold: self.neighbor_threshold,
                },
            },
        }
    }
}

/// Defaults: BLMN, chemical/sequence similarity, RLS local models with
/// δ = 1, max combination, linear neighbor weights.
#[no_mangle]
pub extern "C" fn dti_predictor_options_default() -> DtiPredictorOptions {
    let core = PredictorConfig::default();
    let inferring = core.blm.inferring;
    DtiPredictorOptions {
        method: DtiMethod::Blmn,
        similarity: DtiSimilarity::ChemSeq,
        hybrid_weight: core.similarity.hybrid_weight,
        gip_scale: core.similarity.gip_bandwidth_scale,
        recompute_network_per_mask: core.similarity.recompute_per_mask,
        bandwidth: core.bgm.bandwidth,
        embedding_dim: core.bgm.embedding_dim.unwrap_or(0),
        bgm_ridge: core.bgm.ridge,
        local_model: DtiLocalModel::Rls,
        delta: core.blm.local_classifier.delta,
        svm_c: core.blm.local_classifier.c,
        combine: DtiCombine::Max,
        inferring_mode: DtiInferringMode::Linear,
        beta: inferring.beta,
        neighbor_threshold: inferring.threshold,
        seed: 0,
    }
}

/// Loads an interaction matrix and the two similarity matrices.
///
/// # Safety
/// Path arguments must be null or NUL-terminated strings; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_dataset_load(
    interactions: *const c_char,
    drug_similarity: *const c_char,
    target_similarity: *const c_char,
    out: *mut *mut DtiDataset,
) -> DtiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let a = path_arg(interactions, "interactions")?;
        let d = path_arg(drug_similarity, "drug_similarity")?;
        let t = path_arg(target_similarity, "target_similarity")?;
        let inner = load_dti(&a, &d, &t).map_err(core_err)?;
        *out = Box::into_raw(Box::new(DtiDataset { inner }));
        Ok(())
    })
}

/// # Safety
/// `dataset` must be null or a handle from [`dti_dataset_load`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dti_dataset_free(dataset: *mut DtiDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// # Safety
/// `dataset` must be a live handle; output pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_dataset_dims(
    dataset: *const DtiDataset,
    n_drugs: *mut usize,
    n_targets: *mut usize,
) -> DtiStatus {
    guard(|| {
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        if n_drugs.is_null() || n_targets.is_null() {
            return Err(null("output"));
        }
        *n_drugs = ds.inner.n_drugs();
        *n_targets = ds.inner.n_targets();
        Ok(())
    })
}

/// # Safety
/// `dataset` must be a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_dataset_stats(dataset: *const DtiDataset, out: *mut DtiDatasetStats) -> DtiStatus {
    guard(|| {
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = stats(&ds.inner);
        *out = DtiDatasetStats {
            n_drugs: s.n_drugs,
            n_targets: s.n_targets,
            interactions: s.interactions,
            mean_drug_degree: s.mean_drug_degree,
            mean_target_degree: s.mean_target_degree,
            pct_drug_degree_one: s.pct_drug_degree_one,
            pct_target_degree_one: s.pct_target_degree_one,
        };
        Ok(())
    })
}

unsafe fn scores_call(
    dataset: *const DtiDataset,
    options: *const DtiPredictorOptions,
    out: *mut *mut DtiScores,
    run: impl FnOnce(&CoreDataset, &PredictorConfig) -> dti_core::Result<ScoreMatrix>,
) -> DtiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        let options = options.as_ref().ok_or_else(|| null("options"))?;
        let config = options.to_config();
        config.validate().map_err(core_err)?;
        let inner = run(&ds.inner, &config).map_err(core_err)?;
        *out = Box::into_raw(Box::new(DtiScores { inner }));
        Ok(())
    })
}

/// Scores every pair from the full interaction matrix.
///
/// # Safety
/// `dataset` and `options` must be valid; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_predict(
    dataset: *const DtiDataset,
    options: *const DtiPredictorOptions,
    out: *mut *mut DtiScores,
) -> DtiStatus {
    scores_call(dataset, options, out, |ds, cfg| cfg.predict(ds))
}

/// Leave-one-out scores: each known pair is rescored with its own entry
/// masked. `workers` = 0 uses every core.
///
/// # Safety
/// `dataset` and `options` must be valid; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_loocv(
    dataset: *const DtiDataset,
    options: *const DtiPredictorOptions,
    workers: usize,
    out: *mut *mut DtiScores,
) -> DtiStatus {
    scores_call(dataset, options, out, |ds, cfg| loocv(ds, cfg, workers))
}

/// # Safety
/// `scores` must be a live handle; output pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_scores_dims(scores: *const DtiScores, n_drugs: *mut usize, n_targets: *mut usize) -> DtiStatus {
    guard(|| {
        let s = scores.as_ref().ok_or_else(|| null("scores"))?;
        if n_drugs.is_null() || n_targets.is_null() {
            return Err(null("output"));
        }
        *n_drugs = s.inner.n_drugs();
        *n_targets = s.inner.n_targets();
        Ok(())
    })
}

/// Copies the scores row-major (drug-major) into `buffer`, which must hold
/// `len >= n_drugs * n_targets` values.
///
/// # Safety
/// `buffer` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn dti_scores_copy(scores: *const DtiScores, buffer: *mut f64, len: usize) -> DtiStatus {
    guard(|| {
        let s = scores.as_ref().ok_or_else(|| null("scores"))?;
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        let values = s.inner.values.as_slice();
        if len < values.len() {
            return Err((
                DtiStatus::ErrInput,
                format!("buffer holds {len} values, {} needed", values.len()),
            ));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len());
        Ok(())
    })
}

/// # Safety
/// `scores` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dti_scores_free(scores: *mut DtiScores) {
    if !scores.is_null() {
        drop(Box::from_raw(scores));
    }
}

/// AUC and AUPR (average precision) of `scores` against the dataset's known
/// interactions.
///
/// # Safety
/// Handles must be live; `auc` and `aupr` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dti_evaluate(
    scores: *const DtiScores,
    dataset: *const DtiDataset,
    auc: *mut f64,
    aupr: *mut f64,
) -> DtiStatus {
    guard(|| {
        let s = scores.as_ref().ok_or_else(|| null("scores"))?;
        let ds = dataset.as_ref().ok_or_else(|| null("dataset"))?;
        if auc.is_null() || aupr.is_null() {
            return Err(null("output"));
        }
        let report = roc_pr(&s.inner, &ds.inner.interactions, AuprMode::AveragePrecision).map_err(core_err)?;
        *auc = report.auc;
        *aupr = report.aupr;
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dti_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_options_match_core_defaults() {
        let o = dti_predictor_options_default();
        let cfg = o.to_config();
        assert_eq!(cfg.method, Method::Blmn);
        assert!(cfg.blm.neighbor_inferring);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn nested_errors_keep_their_class() {
        let e = Error::AtPair {
            drug: 0,
            target: 1,
            source: Box::new(Error::Numeric("x".into())),
        };
        assert_eq!(status_of(&e), DtiStatus::ErrNumeric);
    }

    #[test]
    fn panics_become_status_codes() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, DtiStatus::ErrPanic);
        let msg = unsafe { CStr::from_ptr(dti_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "panic: boom");
    }
}
