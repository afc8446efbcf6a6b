#ifndef HIERFIT_H
#define HIERFIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. `Ok` is zero.
 */
typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_ARGUMENT = 2,
  HF_STATUS_IO = 3,
  HF_STATUS_PARSE = 4,
  HF_STATUS_CONFIG = 5,
  HF_STATUS_MISSING_RELATION = 6,
  HF_STATUS_NUMERIC_FAILURE = 7,
  HF_STATUS_UNCOVERED = 8,
  HF_STATUS_UNDEFINED = 9,
  HF_STATUS_PANIC = 10,
} HfStatus;

typedef enum HfFormat {
  HF_FORMAT_GLOVE_TEXT = 0,
  HF_FORMAT_WORD2VEC_TEXT = 1,
} HfFormat;

typedef enum HfRelation {
  HF_RELATION_SYNONYM = 0,
  HF_RELATION_ANTONYM = 1,
  HF_RELATION_HYPERNYM = 2,
} HfRelation;

typedef enum HfMethod {
  HF_METHOD_RETROFITTING = 0,
  HF_METHOD_COUNTERFITTING = 1,
  HF_METHOD_ATTRACT_REPEL = 2,
  HF_METHOD_LEAR = 3,
  HF_METHOD_HIERARCHY_FITTING = 4,
  HF_METHOD_HIERARCHY_FITTING_AD_DIR = 5,
  HF_METHOD_HIERARCHY_FITTING_AD_INDIR = 6,
} HfMethod;

typedef enum HfTask {
  HF_TASK_SIMILARITY = 0,
  HF_TASK_BLESS = 1,
  HF_TASK_WBLESS = 2,
  HF_TASK_BIBLESS = 3,
  HF_TASK_HYPERLEX = 4,
} HfTask;

/**
 * Opaque constraint set.
 */
typedef struct HfConstraints HfConstraints;

/**
 * Opaque embedding store.
 */
typedef struct HfStore HfStore;

/**
 * Training settings. Obtain defaults with [`hf_config_default`].
 */
typedef struct HfConfig {
  enum HfMethod method;
  double learning_rate;
  uint32_t epochs;
  uint32_t batch_size;
  uint64_t seed;
  double adagrad_epsilon;
  uint32_t neighbor_k;
  uint32_t samples_k;
  /**
   * Non-zero keeps only the closest in-batch negatives.
   */
  uint8_t closest_only;
  double retrofit_alpha;
  uint32_t retrofit_iterations;
  /**
   * Hop limit for the hypernym closure; 0 means unbounded.
   */
  uint32_t closure_depth;
  double m_syn;
  double m_ant;
  double m_hyp;
  double m_hie_syn;
  double m_hie_hyp;
  double m_reg;
  double gamma_reg;
  double ad_weight;
} HfConfig;

/**
 * Evaluation protocol settings.
 */
typedef struct HfEvalOptions {
  enum HfTask task;
  /**
   * Non-zero resolves OOV words by stripping trailing characters.
   */
  uint8_t backoff;
  uint64_t seed;
  uint32_t iterations;
  /**
   * Non-zero uses `|word| / |candidate|` inside HyperScore.
   */
  uint8_t hypo_over_hyper;
} HfEvalOptions;

typedef struct HfEvalResult {
  double value;
  double coverage;
  uint64_t n_pairs;
  uint64_t n_covered;
} HfEvalResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call or [`hf_clear_last_error`] on the same
 * thread.
 */
const char *hf_last_error_message(void);

void hf_clear_last_error(void);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum HfStatus hf_store_load(const char *path, enum HfFormat format, struct HfStore **out);

/**
 * Builds a store from `n` tokens and a row-major `n x dim` matrix.
 *
 * # Safety
 * `tokens` must hold `n` NUL-terminated strings and `data` `n * dim` values.
 */
enum HfStatus hf_store_from_matrix(const char *const *tokens,
                                   const double *data,
                                   size_t n,
                                   size_t dim,
                                   struct HfStore **out);

/**
 * # Safety
 * `store` must come from this library and not be used afterwards.
 */
void hf_store_free(struct HfStore *store);

/**
 * # Safety
 * `store` must be a live handle and `path` a NUL-terminated string.
 */
enum HfStatus hf_store_save(const struct HfStore *store, const char *path, enum HfFormat format);

/**
 * Vocabulary size, or 0 for a null handle.
 *
 * # Safety
 * `store` must be null or a live handle.
 */
size_t hf_store_len(const struct HfStore *store);

/**
 * # Safety
 * `store` must be null or a live handle.
 */
size_t hf_store_dim(const struct HfStore *store);

/**
 * Row of an exact token; [`HfStatus::Uncovered`] when absent.
 *
 * # Safety
 * Pointers must be valid; `token` NUL-terminated.
 */
enum HfStatus hf_store_row(const struct HfStore *store, const char *token, size_t *out_row);

/**
 * Copies the current (or, when `original` is non-zero, the original) vector
 * of `row` into `buf`, which must hold `len >= dim` values.
 *
 * # Safety
 * `buf` must be writable for `len` values.
 */
enum HfStatus hf_store_vector(const struct HfStore *store,
                              size_t row,
                              uint8_t original,
                              double *buf,
                              size_t len);

/**
 * Cosine similarity of two rows in the current space.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HfStatus hf_store_cosine(const struct HfStore *store, size_t a, size_t b, double *out);

/**
 * Writes up to `k` neighbours of `row` into `rows`/`scores` (each holding
 * `k` slots) and their count into `out_n`.
 *
 * # Safety
 * `rows` and `scores` must be writable for `k` values.
 */
enum HfStatus hf_store_nearest(const struct HfStore *store,
                               size_t row,
                               size_t k,
                               size_t *rows,
                               double *scores,
                               size_t *out_n);

struct HfConstraints *hf_constraints_new(void);

/**
 * # Safety
 * `cs` must come from this library and not be used afterwards.
 */
void hf_constraints_free(struct HfConstraints *cs);

/**
 * Reads a pair file against `store`'s vocabulary and merges it into `cs`.
 *
 * # Safety
 * Handles must be live; `path` NUL-terminated.
 */
enum HfStatus hf_constraints_load(struct HfConstraints *cs,
                                  const char *path,
                                  enum HfRelation relation,
                                  const struct HfStore *store);

/**
 * Adds one pair of rows.
 *
 * # Safety
 * Handles must be live.
 */
enum HfStatus hf_constraints_add(struct HfConstraints *cs,
                                 enum HfRelation relation,
                                 size_t a,
                                 size_t b);

/**
 * Number of stored pairs of a relation (direct hypernyms for `Hypernym`).
 *
 * # Safety
 * `cs` must be null or a live handle.
 */
size_t hf_constraints_count(const struct HfConstraints *cs, enum HfRelation relation);

struct HfConfig hf_config_default(enum HfMethod method);

/**
 * Specializes a copy of `store`; the result is written to `out` as a new
 * handle. The LEAR and indirect-AD methods use the hypernym closure.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HfStatus hf_specialize(const struct HfStore *store,
                            const struct HfConstraints *cs,
                            const struct HfConfig *config,
                            struct HfStore **out);

struct HfEvalOptions hf_eval_options_default(enum HfTask task);

/**
 * Evaluates `store` on a dataset file.
 *
 * # Safety
 * Pointers must be valid; `dataset` NUL-terminated.
 */
enum HfStatus hf_eval(const struct HfStore *store,
                      const char *dataset,
                      const struct HfEvalOptions *options,
                      struct HfEvalResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HIERFIT_H */
