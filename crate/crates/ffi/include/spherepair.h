#ifndef SPHEREPAIR_H
#define SPHEREPAIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_PARSE = 1,
  SP_STATUS_VALIDATION = 2,
  SP_STATUS_HYPOTHESIS = 3,
  SP_STATUS_TRUNCATION = 4,
  SP_STATUS_NON_INVERTIBLE = 5,
  SP_STATUS_UNSUPPORTED_COEFFICIENT = 6,
  SP_STATUS_UNSUPPORTED = 7,
  SP_STATUS_RESOURCE = 8,
  SP_STATUS_VERIFICATION = 9,
  SP_STATUS_NULL_POINTER = 10,
  SP_STATUS_INVALID_UTF8 = 11,
  SP_STATUS_OVERFLOW = 12,
  SP_STATUS_PANIC = 13,
} SpStatus;

/**
 * Opaque space expression.
 */
typedef struct SpExpr SpExpr;

/**
 * Opaque truncated power series with integer coefficients.
 */
typedef struct SpSeries SpSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *sp_last_error(void);

/**
 * Process exit code the CLI uses for `status` (0 for success).
 */
int32_t sp_status_exit_code(enum SpStatus status);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or a pointer returned through a `char **` out-parameter of
 * this library that has not been freed.
 */
void sp_string_free(char *s);

/**
 * Parses and validates a JSON space expression.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is valid for one pointer write.
 */
enum SpStatus sp_expr_from_json(const char *json, struct SpExpr **out);

/**
 * # Safety
 * `expr` is null or a handle from this library that has not been freed.
 */
void sp_expr_free(struct SpExpr *expr);

/**
 * Normal form of `expr` as a new handle.
 *
 * # Safety
 * `expr` is a live handle; `out` is valid for one pointer write.
 */
enum SpStatus sp_expr_normalize(const struct SpExpr *expr, struct SpExpr **out);

/**
 * Display form, for example `(S^3 ∨ P^4(2))`.
 *
 * # Safety
 * `expr` is a live handle; `out` is valid for one pointer write.
 */
enum SpStatus sp_expr_to_string(const struct SpExpr *expr, char **out);

/**
 * Canonical homology text through degree `trunc` over `ring`
 * (`z`, `q`, `fp:<p>` or `zloc:<p,...>`).
 *
 * # Safety
 * `expr` is a live handle; `ring` is a nul-terminated string; `out` is valid
 * for one pointer write.
 */
enum SpStatus sp_homology(const struct SpExpr *expr, const char *ring, size_t trunc, char **out);

/**
 * Poincaré series of `expr` over the field `field` (`q` or `fp:<p>`).
 *
 * # Safety
 * `expr` is a live handle; `field` is a nul-terminated string; `out` is
 * valid for one pointer write.
 */
enum SpStatus sp_poincare_series(const struct SpExpr *expr,
                                 const char *field,
                                 size_t trunc,
                                 struct SpSeries **out);

/**
 * Poincaré series of the loop space of `expr`.
 *
 * # Safety
 * Same contract as [`sp_poincare_series`].
 */
enum SpStatus sp_loop_series(const struct SpExpr *expr,
                             const char *field,
                             size_t trunc,
                             struct SpSeries **out);

/**
 * Truncation degree of the series; coefficients `0..=trunc` are exact.
 *
 * # Safety
 * `series` is a live handle.
 */
size_t sp_series_trunc(const struct SpSeries *series);

/**
 * Coefficient of `t^degree` as a 64-bit integer.
 *
 * # Safety
 * `series` is a live handle; `out` is valid for one write.
 */
enum SpStatus sp_series_coeff(const struct SpSeries *series, size_t degree, int64_t *out);

/**
 * Exact text form, for example `1 + t^2 + O(t^5)`.
 *
 * # Safety
 * `series` is a live handle; `out` is valid for one pointer write.
 */
enum SpStatus sp_series_to_string(const struct SpSeries *series, char **out);

/**
 * # Safety
 * `series` is null or a handle from this library that has not been freed.
 */
void sp_series_free(struct SpSeries *series);

/**
 * Runs one CLI job document (`{"command", "payload", "options"}`) and
 * writes the JSON report. `exit_code` receives the CLI exit status; the
 * return value is `SP_STATUS_OK` whenever a report was produced, including
 * reports of failed hypotheses or verifications.
 *
 * # Safety
 * `job_json` is a nul-terminated string; `out_json` and `exit_code` are
 * valid for one write each.
 */
enum SpStatus sp_run_job(const char *job_json, char **out_json, int32_t *exit_code);

/**
 * Library version, static storage.
 */
const char *sp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHEREPAIR_H */
