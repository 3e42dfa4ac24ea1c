#ifndef RANKIN_PERIODS_H
#define RANKIN_PERIODS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RpField {
  RP_FIELD_REAL = 0,
  RP_FIELD_COMPLEX = 1,
} RpField;

typedef enum RpStatus {
  RP_STATUS_OK = 0,
  RP_STATUS_NULL_POINTER = 1,
  RP_STATUS_INVALID_UTF8 = 2,
  RP_STATUS_PARSE = 3,
  RP_STATUS_MALFORMED_WEIGHT = 4,
  RP_STATUS_DIMENSION_MISMATCH = 5,
  RP_STATUS_NOT_PURE = 6,
  RP_STATUS_NOT_BALANCED = 7,
  RP_STATUS_INVALID_CHARACTER = 8,
  RP_STATUS_INVALID_ARGUMENT = 9,
  RP_STATUS_INTERNAL = 10,
} RpStatus;

/**
 * Opaque weight handle.
 */
typedef struct RpWeight RpWeight;

/**
 * A closed integer interval; `lo`, `hi` are meaningless when `empty`.
 */
typedef struct RpInterval {
  bool empty;
  int64_t lo;
  int64_t hi;
} RpInterval;

typedef struct RpVerifyResult {
  bool exact_match;
  /**
   * Exponent of the reduced constant, or -1 if the ratio is not constant.
   */
  int32_t constant;
  uint8_t omega;
  /**
   * Relative spread at the sample points; NaN if evaluation failed.
   */
  double constancy_residual;
  /**
   * Distance from Omega at the sample points; NaN if evaluation failed.
   */
  double match_residual;
} RpVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *rp_last_error(void);

/**
 * Builds a weight from `embeddings * n` entries in row-major order, where
 * `embeddings` is 1 for `Real` and 2 for `Complex`.
 *
 * # Safety
 * `entries` must point to that many `int64_t`; `out` must be writable.
 */
enum RpStatus rp_weight_new(enum RpField field,
                            const int64_t *entries,
                            size_t n,
                            struct RpWeight **out);

/**
 * Parses a weight from `{"field": "R"|"C", "rows": [[...], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RpStatus rp_weight_from_json(const char *json, struct RpWeight **out);

/**
 * # Safety
 * `w` must be NULL or a handle from this library not yet freed.
 */
void rp_weight_free(struct RpWeight *w);

/**
 * Size `n` of the weight, 0 for NULL.
 *
 * # Safety
 * `w` must be NULL or a live handle.
 */
size_t rp_weight_n(const struct RpWeight *w);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum RpStatus rp_balanced_places(const struct RpWeight *mu,
                                 const struct RpWeight *nu,
                                 struct RpInterval *out);

/**
 * `Omega` for `(mu, nu, j)` as an exponent of `i`. Does not require `j` to
 * be balanced.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum RpStatus rp_omega(const struct RpWeight *mu,
                       const struct RpWeight *nu,
                       int64_t j,
                       int8_t eps_psi,
                       uint8_t *out);

/**
 * Verifies one case. `chi_sign` is the power of `sgn` (ignored over `C`);
 * `eps_n`, `eps_n1` select the sign characters where they are allowed.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum RpStatus rp_verify(const struct RpWeight *mu,
                        const struct RpWeight *nu,
                        int64_t j,
                        uint8_t chi_sign,
                        uint8_t eps_n,
                        uint8_t eps_n1,
                        int8_t eps_psi,
                        struct RpVerifyResult *out);

/**
 * Verifies a case given as JSON and returns the full report as JSON.
 *
 * # Safety
 * `case_json` must be NUL-terminated; `out` must be writable.
 */
enum RpStatus rp_verify_json(const char *case_json, char **out);

/**
 * Decides whether a rendered Gamma product is constant. Writes the exponent
 * of the constant, or -1 if it is not constant.
 *
 * # Safety
 * `expr` must be NUL-terminated; `out` must be writable.
 */
enum RpStatus rp_reduce_gamma(const char *expr, int32_t *out);

/**
 * `z_k` as a JSON array of integer rows.
 *
 * # Safety
 * `out` must be writable.
 */
enum RpStatus rp_zmatrix_json(size_t k, char **out);

/**
 * Gauss sum of character `index` modulo `modulus` as
 * `{"level": M, "coeffs": [...]}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RpStatus rp_gauss_json(uint64_t modulus, size_t index, bool normalized, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void rp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKIN_PERIODS_H */
