#ifndef SUPOU_H
#define SUPOU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SupouStatus {
  SUPOU_STATUS_OK = 0,
  SUPOU_STATUS_NULL_POINTER = 1,
  SUPOU_STATUS_INVALID_ARGUMENT = 2,
  SUPOU_STATUS_NUMERICAL = 3,
  SUPOU_STATUS_BUFFER_TOO_SMALL = 4,
  SUPOU_STATUS_PANIC = 5,
} SupouStatus;

typedef enum SupouLevyKind {
  SUPOU_LEVY_KIND_PARETO = 0,
  SUPOU_LEVY_KIND_EXPONENTIAL = 1,
  SUPOU_LEVY_KIND_DIRAC = 2,
  SUPOU_LEVY_KIND_BOUNDED_INFINITE = 3,
  SUPOU_LEVY_KIND_SLOWLY_VARYING = 4,
} SupouLevyKind;

typedef enum SupouMixingKind {
  SUPOU_MIXING_KIND_GAMMA = 0,
  SUPOU_MIXING_KIND_UNIFORM = 1,
  SUPOU_MIXING_KIND_POINT_MASS = 2,
  SUPOU_MIXING_KIND_INVERSE_FIRST_MOMENT = 3,
} SupouMixingKind;

typedef enum SupouNormalizerKind {
  SUPOU_NORMALIZER_KIND_POWER = 0,
  SUPOU_NORMALIZER_KIND_LOG = 1,
  SUPOU_NORMALIZER_KIND_LOG_OVER_LOG_LOG = 2,
} SupouNormalizerKind;

typedef enum SupouVerdict {
  SUPOU_VERDICT_DIVERGING = 0,
  SUPOU_VERDICT_VANISHING = 1,
  SUPOU_VERDICT_BOUNDED_AWAY = 2,
} SupouVerdict;

/**
 * Block-maxima growth report.
 */
typedef struct SupouGrowthReport SupouGrowthReport;

/**
 * Simulated sample path.
 */
typedef struct SupouPath SupouPath;

/**
 * Jump measure; `param` is γ, the rate c or z0 and is ignored otherwise.
 */
typedef struct SupouLevySpec {
  enum SupouLevyKind kind;
  double param;
} SupouLevySpec;

/**
 * Mixing measure; `p1` is the shape, `a`, `x0` or the upper truncation,
 * `p2` is `b` for the uniform law.
 */
typedef struct SupouMixingSpec {
  enum SupouMixingKind kind;
  double p1;
  double p2;
} SupouMixingSpec;

/**
 * Normalizer `f`; `param` is the exponent `a` or the constant κ.
 */
typedef struct SupouNormalizerSpec {
  enum SupouNormalizerKind kind;
  double param;
} SupouNormalizerSpec;

typedef struct SupouGrowthSummary {
  double median;
  double min;
  double max;
  size_t diverging;
  size_t vanishing;
  size_t bounded_away;
  size_t replicates;
} SupouGrowthSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *supou_version(void);

/**
 * Length in bytes of the last error message on this thread, without the
 * terminating NUL; 0 when there is none.
 */
size_t supou_last_error_length(void);

/**
 * Copies the last error message, NUL-terminated, into `buf`.
 *
 * # Safety
 * `buf` must be valid for `len` bytes.
 */
enum SupouStatus supou_last_error_message(char *buf, size_t len);

/**
 * Jump tail `λ̄(z)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SupouStatus supou_lambda_bar(struct SupouLevySpec levy, double z, double *out);

/**
 * Marginal tail `η̄(r) = ∫_r^∞ λ̄(z)/z dz`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SupouStatus supou_eta_bar(struct SupouLevySpec levy, double r, double *out);

/**
 * Writes 1 to `finite` when `E X^β < ∞`, else 0.
 *
 * # Safety
 * `finite` must be valid for writes.
 */
enum SupouStatus supou_moment_finite(struct SupouLevySpec levy, double beta, int32_t *finite);

/**
 * Simulates the atoms of one path on `[-B, horizon]`.
 *
 * A negative `burn_in` selects `B` automatically, a negative `eps` the
 * default truncation of the jump measure. The handle is written to `out`
 * and must be released with [`supou_path_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SupouStatus supou_path_generate(struct SupouLevySpec levy,
                                     struct SupouMixingSpec pi,
                                     double burn_in,
                                     double horizon,
                                     double eps,
                                     uint64_t seed,
                                     uint64_t stream,
                                     struct SupouPath **out);

/**
 * # Safety
 * `path` must come from [`supou_path_generate`] and not be used afterwards.
 */
void supou_path_free(struct SupouPath *path);

/**
 * # Safety
 * `path` must be a live handle and `out` valid for writes.
 */
enum SupouStatus supou_path_atom_count(const struct SupouPath *path, size_t *out);

/**
 * Burn-in `B` actually used by the path.
 *
 * # Safety
 * `path` must be a live handle and `out` valid for writes.
 */
enum SupouStatus supou_path_burn_in(const struct SupouPath *path, double *out);

/**
 * Copies the atoms, sorted by arrival, into three arrays of length `len`.
 *
 * # Safety
 * Each array must be valid for `len` writes.
 */
enum SupouStatus supou_path_atoms(const struct SupouPath *path,
                                  double *tau,
                                  double *xi,
                                  double *zeta,
                                  size_t len);

/**
 * Evaluates `X` at `n` nondecreasing times. `pruning_error` may be null.
 *
 * # Safety
 * `times` must be valid for `n` reads, `values` for `n` writes.
 */
enum SupouStatus supou_path_evaluate(const struct SupouPath *path,
                                     const double *times,
                                     size_t n,
                                     double *values,
                                     double *pruning_error);

/**
 * `sup_{[u, v]} X`.
 *
 * # Safety
 * `path` must be a live handle and `out` valid for writes.
 */
enum SupouStatus supou_path_sup(const struct SupouPath *path, double u, double v, double *out);

/**
 * Runs the block-maxima growth experiment with default options.
 *
 * # Safety
 * `out` must be valid for writes; release the handle with
 * [`supou_growth_free`].
 */
enum SupouStatus supou_growth_run(struct SupouLevySpec levy,
                                  struct SupouMixingSpec pi,
                                  struct SupouNormalizerSpec normalizer,
                                  double horizon,
                                  size_t replicates,
                                  uint64_t seed,
                                  struct SupouGrowthReport **out);

/**
 * # Safety
 * `report` must come from [`supou_growth_run`] and not be used afterwards.
 */
void supou_growth_free(struct SupouGrowthReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` valid for writes.
 */
enum SupouStatus supou_growth_summary(const struct SupouGrowthReport *report,
                                      struct SupouGrowthSummary *out);

/**
 * Trend verdict of replicate `index`.
 *
 * # Safety
 * `report` must be a live handle and `out` valid for writes.
 */
enum SupouStatus supou_growth_verdict(const struct SupouGrowthReport *report,
                                      size_t index,
                                      enum SupouVerdict *out);

/**
 * Terminal running maxima, one per replicate.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum SupouStatus supou_growth_terminal_maxima(const struct SupouGrowthReport *report,
                                              double *out,
                                              size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPOU_H */
