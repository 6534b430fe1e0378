#ifndef DTI_H
#define DTI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DtiMethod {
  DTI_METHOD_BGM = 0,
  DTI_METHOD_BLM = 1,
  DTI_METHOD_BLMN = 2,
} DtiMethod;

typedef enum DtiSimilarity {
  DTI_SIMILARITY_CHEM_SEQ = 0,
  DTI_SIMILARITY_NETWORK = 1,
  DTI_SIMILARITY_HYBRID = 2,
} DtiSimilarity;

typedef enum DtiLocalModel {
  DTI_LOCAL_MODEL_RLS = 0,
  DTI_LOCAL_MODEL_SVM = 1,
} DtiLocalModel;

typedef enum DtiCombine {
  DTI_COMBINE_MAX = 0,
  DTI_COMBINE_MEAN = 1,
} DtiCombine;

typedef enum DtiInferringMode {
  DTI_INFERRING_MODE_LINEAR = 0,
  DTI_INFERRING_MODE_EXPONENTIAL = 1,
} DtiInferringMode;

/*
 Result of every fallible call.
 */
typedef enum DtiStatus {
  DTI_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  DTI_STATUS_ERR_NULL = 1,
  DTI_STATUS_ERR_INPUT = 2,
  DTI_STATUS_ERR_FORMAT = 3,
  DTI_STATUS_ERR_PARSE = 4,
  DTI_STATUS_ERR_CONFIG = 5,
  DTI_STATUS_ERR_NUMERIC = 6,
  DTI_STATUS_ERR_CONVERGENCE = 7,
  DTI_STATUS_ERR_METRIC = 8,
  DTI_STATUS_ERR_IO = 9,
  /*
   A Rust panic was caught at the boundary.
   */
  DTI_STATUS_ERR_PANIC = 10,
} DtiStatus;

/*
 Opaque dataset handle.
 */
typedef struct DtiDataset DtiDataset;

/*
 Opaque score-matrix handle.
 */
typedef struct DtiScores DtiScores;

/*
 Predictor settings; start from [`dti_predictor_options_default`].
 */
typedef struct DtiPredictorOptions {
  enum DtiMethod method;
  enum DtiSimilarity similarity;
  /*
   Weight on chemical/sequence similarity in the hybrid.
   */
  double hybrid_weight;
  /*
   Scale of the interaction-profile kernel bandwidth.
   */
  double gip_scale;
  /*
   Recompute network similarity for each masked matrix.
   */
  bool recompute_network_per_mask;
  /*
   BGM graph kernel bandwidth.
   */
  double bandwidth;
  /*
   BGM embedding dimension; 0 keeps every positive component.
   */
  size_t embedding_dim;
  double bgm_ridge;
  enum DtiLocalModel local_model;
  /*
   RLS regularization.
   */
  double delta;
  /*
   SVM box constraint.
   */
  double svm_c;
  enum DtiCombine combine;
  enum DtiInferringMode inferring_mode;
  double beta;
  double neighbor_threshold;
  uint64_t seed;
} DtiPredictorOptions;

typedef struct DtiDatasetStats {
  size_t n_drugs;
  size_t n_targets;
  size_t interactions;
  double mean_drug_degree;
  double mean_target_degree;
  double pct_drug_degree_one;
  double pct_target_degree_one;
} DtiDatasetStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Defaults: BLMN, chemical/sequence similarity, RLS local models with
 δ = 1, max combination, linear neighbor weights.
 */
struct DtiPredictorOptions dti_predictor_options_default(void);

/*
 Loads an interaction matrix and the two similarity matrices.

 # Safety
 Path arguments must be null or NUL-terminated strings; `out` must be
 null or writable.
 */
enum DtiStatus dti_dataset_load(const char *interactions,
                                const char *drug_similarity,
                                const char *target_similarity,
                                struct DtiDataset **out);

/*
 # Safety
 `dataset` must be null or a handle from [`dti_dataset_load`] not yet freed.
 */
void dti_dataset_free(struct DtiDataset *dataset);

/*
 # Safety
 `dataset` must be a live handle; output pointers null or writable.
 */
enum DtiStatus dti_dataset_dims(const struct DtiDataset *dataset,
                                size_t *n_drugs,
                                size_t *n_targets);

/*
 # Safety
 `dataset` must be a live handle; `out` null or writable.
 */
enum DtiStatus dti_dataset_stats(const struct DtiDataset *dataset, struct DtiDatasetStats *out);

/*
 Scores every pair from the full interaction matrix.

 # Safety
 `dataset` and `options` must be valid; `out` null or writable.
 */
enum DtiStatus dti_predict(const struct DtiDataset *dataset,
                           const struct DtiPredictorOptions *options,
                           struct DtiScores **out);

/*
 Leave-one-out scores: each known pair is rescored with its own entry
 masked. `workers` = 0 uses every core.

 # Safety
 `dataset` and `options` must be valid; `out` null or writable.
 */
enum DtiStatus dti_loocv(const struct DtiDataset *dataset,
                         const struct DtiPredictorOptions *options,
                         size_t workers,
                         struct DtiScores **out);

/*
 # Safety
 `scores` must be a live handle; output pointers null or writable.
 */
enum DtiStatus dti_scores_dims(const struct DtiScores *scores, size_t *n_drugs, size_t *n_targets);

/*
 Copies the scores row-major (drug-major) into `buffer`, which must hold
 `len >= n_drugs * n_targets` values.

 # Safety
 `buffer` must be valid for `len` writes.
 */
enum DtiStatus dti_scores_copy(const struct DtiScores *scores, double *buffer, size_t len);

/*
 # Safety
 `scores` must be null or a live handle.
 */
void dti_scores_free(struct DtiScores *scores);

/*
 AUC and AUPR (average precision) of `scores` against the dataset's known
 interactions.

 # Safety
 Handles must be live; `auc` and `aupr` null or writable.
 */
enum DtiStatus dti_evaluate(const struct DtiScores *scores,
                            const struct DtiDataset *dataset,
                            double *auc,
                            double *aupr);

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *dti_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DTI_H */
