#ifndef CLUSTER_CAPACITY_H
#define CLUSTER_CAPACITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values are stable.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  /**
   * Malformed input: bad JSON, bad words, bad parameters.
   */
  CC_STATUS_INPUT = 1,
  /**
   * The forbidden set breaks a structural requirement.
   */
  CC_STATUS_VALIDATION = 2,
  /**
   * Only finitely many strings avoid the set; capacity is undefined.
   */
  CC_STATUS_DEGENERATE = 3,
  /**
   * A size or enumeration guard was hit.
   */
  CC_STATUS_RESOURCE = 4,
  /**
   * No positive root where one was required.
   */
  CC_STATUS_NO_ROOT = 5,
  /**
   * Broken internal invariant; please report.
   */
  CC_STATUS_INTERNAL = 6,
  /**
   * A required pointer argument was null.
   */
  CC_STATUS_NULL_POINTER = 7,
  /**
   * The library panicked; the call had no effect.
   */
  CC_STATUS_PANIC = 8,
} CcStatus;

/**
 * A reduced forbidden set.
 */
typedef struct CcForbiddenSet CcForbiddenSet;

/**
 * A generating function `T(x) / S(x)`.
 */
typedef struct CcGenFun CcGenFun;

/**
 * Capacity estimate: `value` is within `eps` of the true capacity.
 */
typedef struct CcCapacity {
  double value;
  double eps;
} CcCapacity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON constraint spec and reduces it.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CcStatus cc_forbidden_set_from_json(const char *json, struct CcForbiddenSet **out);

/**
 * Number of words in the (reduced) set.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t cc_forbidden_set_len(const struct CcForbiddenSet *set);

/**
 * Releases a set. Null is ignored.
 *
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void cc_forbidden_set_free(struct CcForbiddenSet *set);

/**
 * Computes the generating function of the strings avoiding `set`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_genfun_compute(const struct CcForbiddenSet *set, struct CcGenFun **out);

/**
 * Parses `{"T": [...], "S": [...], "q": q, "ellF": l}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CcStatus cc_genfun_from_json(const char *json, struct CcGenFun **out);

/**
 * Serializes a generating function; free the result with `cc_string_free`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_genfun_to_json(const struct CcGenFun *f, char **out);

/**
 * Releases a generating function. Null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void cc_genfun_free(struct CcGenFun *f);

/**
 * `N(n)` as a decimal string; free the result with `cc_string_free`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_count(const struct CcGenFun *f, size_t n, char **out);

/**
 * Capacity from the generating function's denominator.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_capacity(const struct CcGenFun *f, double eps, struct CcCapacity *out);

/**
 * Capacity from the de Bruijn graph of the set.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_capacity_spectral(const struct CcForbiddenSet *set,
                                   double eps,
                                   struct CcCapacity *out);

/**
 * Capacity report as JSON, including the exact root enclosure; free the
 * result with `cc_string_free`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_capacity_json(const struct CcGenFun *f, double eps, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void cc_string_free(char *s);

/**
 * Message for the last failed call on this thread, or "" after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *cc_last_error_message(void);

/**
 * Library version, e.g. "0.1.0".
 */
const char *cc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLUSTER_CAPACITY_H */
