#ifndef BNSTAB_H
#define BNSTAB_H

/* Generated by cbindgen from bnstab-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Error codes returned by every fallible entry point.
 */
typedef enum BnstabError {
  BNSTAB_ERROR_OK = 0,
  BNSTAB_ERROR_NULL_POINTER = 1,
  BNSTAB_ERROR_INVALID_ARGUMENT = 2,
  /**
   * The triple has negative Brill-Noether number.
   */
  BNSTAB_ERROR_NOT_BRILL_NOETHER = 3,
  /**
   * The point lies outside the engine's grid.
   */
  BNSTAB_ERROR_OUT_OF_GRID = 4,
  BNSTAB_ERROR_CLOSURE_FAILED = 5,
  BNSTAB_ERROR_BAD_CERTIFICATE = 6,
  BNSTAB_ERROR_NO_CERTIFICATE = 7,
  BNSTAB_ERROR_INTERNAL_PANIC = 8,
} BnstabError;

/**
 * Certification status codes.
 */
typedef enum BnstabStatus {
  BNSTAB_STATUS_UNKNOWN = 0,
  BNSTAB_STATUS_SEMISTABLE = 1,
  BNSTAB_STATUS_STABLE = 2,
  BNSTAB_STATUS_KNOWN_UNSTABLE = 3,
  BNSTAB_STATUS_KNOWN_STRICTLY_SEMISTABLE = 4,
} BnstabStatus;

/**
 * Opaque engine handle owning a completed closure.
 */
typedef struct BnstabEngine BnstabEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Brill-Noether number `g - (r+1)(g - d + r)`; total on all integers.
 */
int64_t bnstab_rho(int64_t d, int64_t g, int64_t r);

/**
 * Split threshold `b2(r)`; requires `r >= 4`.
 *
 * # Safety
 * `out` must be valid for writing one `int64_t`.
 */
enum BnstabError bnstab_b2(int64_t r, int64_t *out);

/**
 * Builds an engine by running the full closure on the grid
 * `1 <= g <= g_max`, `d <= d_max`, `rho >= 0`. The handle must be
 * released with [`bnstab_engine_free`].
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum BnstabError bnstab_engine_new(int64_t r,
                                   int64_t d_max,
                                   int64_t g_max,
                                   bool char_two,
                                   struct BnstabEngine **out);

/**
 * Releases an engine handle. Accepts null.
 *
 * # Safety
 * `engine` must be null or a handle from [`bnstab_engine_new`] that
 * has not been freed.
 */
void bnstab_engine_free(struct BnstabEngine *engine);

/**
 * Status of the point `(d, g)` in the engine's grid.
 *
 * # Safety
 * `engine` must be a live handle; `out` must be valid for writing.
 */
enum BnstabError bnstab_engine_status(const struct BnstabEngine *engine,
                                      int64_t d,
                                      int64_t g,
                                      enum BnstabStatus *out);

/**
 * Certificate of a certified point, serialized as JSON. The returned
 * string is owned by the caller; release it with
 * [`bnstab_string_free`].
 *
 * # Safety
 * `engine` must be a live handle; `out` must be valid for writing.
 */
enum BnstabError bnstab_engine_certificate_json(const struct BnstabEngine *engine,
                                                int64_t d,
                                                int64_t g,
                                                char **out);

/**
 * Re-checks a certificate JSON tree rule by rule.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
enum BnstabError bnstab_verify_certificate_json(const char *json, bool char_two);

/**
 * Number of pairs with unknown status at a level (`stable_level` false
 * for semistability, true for stability), genus at least `min_genus`.
 *
 * # Safety
 * `engine` must be a live handle; `out` must be valid for writing.
 */
enum BnstabError bnstab_engine_unknown_pair_count(const struct BnstabEngine *engine,
                                                  int64_t min_genus,
                                                  bool stable_level,
                                                  size_t *out);

/**
 * Releases a string returned by this library. Accepts null.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not
 * been freed.
 */
void bnstab_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BNSTAB_H */
