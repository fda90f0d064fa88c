#ifndef ANTIPODE_H
#define ANTIPODE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Shape of an order-style answer.
 */
typedef enum AntipodeResultKind {
  /**
   * The value out-parameter holds the exact finite order.
   */
  ANTIPODE_RESULT_KIND_FINITE = 0,
  /**
   * The order is infinite, backed by a verified certificate; the value
   * out-parameter is 0.
   */
  ANTIPODE_RESULT_KIND_INFINITE_CERTIFIED = 1,
  /**
   * No conclusion below the cutoff; the value out-parameter holds the
   * cutoff that was reached.
   */
  ANTIPODE_RESULT_KIND_UNKNOWN_BEYOND = 2,
} AntipodeResultKind;

/**
 * Result of every fallible call in this API.
 */
typedef enum AntipodeStatus {
  /**
   * The call succeeded.
   */
  ANTIPODE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ANTIPODE_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ANTIPODE_STATUS_INVALID_UTF8 = 2,
  /**
   * The JSON document could not be parsed.
   */
  ANTIPODE_STATUS_PARSE_ERROR = 3,
  /**
   * The document parsed but the presentation could not be built
   * (unknown generator, misoriented relation, unknown family, ...).
   */
  ANTIPODE_STATUS_BUILD_ERROR = 4,
  /**
   * Axiom verification ran and found a failing identity.
   */
  ANTIPODE_STATUS_VERIFY_FAILED = 5,
  /**
   * A computation was requested on a presentation that does not pass
   * axiom verification.
   */
  ANTIPODE_STATUS_UNTRUSTED = 6,
  /**
   * The computation itself failed (see `antipode_last_error`).
   */
  ANTIPODE_STATUS_COMPUTE_ERROR = 7,
} AntipodeStatus;

/**
 * Opaque presentation handle.
 */
typedef struct AntipodeHopf AntipodeHopf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for the current thread, or null if no call on this
 * thread has failed yet. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *antipode_last_error(void);

/**
 * Build a presentation handle from a JSON document (the same format the
 * CLI reads and writes). On success `*out` owns the handle; release it
 * with `antipode_hopf_free`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated C string and `out` a valid pointer.
 */
enum AntipodeStatus antipode_hopf_from_json(const char *json, struct AntipodeHopf **out);

/**
 * Build one of the built-in families. Recognised names and the meaning of
 * `param`:
 * - `"uq-borel"`: quantized Borel at a primitive `param`-th root of unity
 * - `"uq-borel-generic"`: quantized Borel over rational functions (`param` ignored)
 * - `"taft-wilson"`: restricted example in characteristic `param`
 * - `"cyclic"`: group algebra of the cyclic group of order `param` over the rationals
 * - `"laurent"`: group algebra of the infinite cyclic group (`param` ignored)
 *
 * # Safety
 * `family` must be a valid NUL-terminated C string and `out` a valid pointer.
 */
enum AntipodeStatus antipode_hopf_builtin(const char *family,
                                          uint64_t param,
                                          struct AntipodeHopf **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `handle` must be null or a pointer previously returned through an
 * `antipode_hopf_*` constructor and not yet freed.
 */
void antipode_hopf_free(struct AntipodeHopf *handle);

/**
 * Run the full axiom suite (bialgebra identities and both antipode
 * convolution identities). Returns `ANTIPODE_STATUS_OK` when every check
 * passes and `ANTIPODE_STATUS_VERIFY_FAILED` otherwise, with the first
 * failing check described by `antipode_last_error`.
 *
 * # Safety
 * `handle` must be a live handle from this API.
 */
enum AntipodeStatus antipode_hopf_verify(const struct AntipodeHopf *handle);

/**
 * Compute the antipode order. `cutoff` bounds the even powers scanned
 * before giving up (`0` selects the default). On success, `*kind` and
 * `*value` describe the result as documented on `AntipodeResultKind`.
 * The presentation is verified first; an axiom failure yields
 * `ANTIPODE_STATUS_UNTRUSTED`.
 *
 * # Safety
 * `handle` must be a live handle from this API; `kind` and `value` must be
 * valid pointers.
 */
enum AntipodeStatus antipode_hopf_antipode_order(struct AntipodeHopf *handle,
                                                 uint64_t cutoff,
                                                 enum AntipodeResultKind *kind,
                                                 uint64_t *value);

/**
 * Compute the invariant m_H: the least common multiple, over the
 * group-like elements x, of the order of conjugation by x acting on the
 * skew-primitive space P_{x,1}. `window_bound` bounds the basis window the
 * skew-primitive computation runs in and `cutoff` bounds the conjugation
 * order scan (`0` selects the defaults). Results are encoded exactly like
 * `antipode_hopf_antipode_order`.
 *
 * # Safety
 * `handle` must be a live handle from this API; `kind` and `value` must be
 * valid pointers.
 */
enum AntipodeStatus antipode_hopf_m_invariant(struct AntipodeHopf *handle,
                                              uint64_t window_bound,
                                              uint64_t cutoff,
                                              enum AntipodeResultKind *kind,
                                              uint64_t *value);

/**
 * Produce a JSON report: presentation name, field, both verification
 * reports, and — when the axioms hold — the invariant m_H and the antipode
 * order (`cutoff` as in the individual queries, `0` for the default).
 * `*out` receives a heap-allocated NUL-terminated string; release it with
 * `antipode_string_free`.
 *
 * # Safety
 * `handle` must be a live handle from this API; `out` must be a valid
 * pointer.
 */
enum AntipodeStatus antipode_hopf_report_json(struct AntipodeHopf *handle,
                                              uint64_t cutoff,
                                              char **out);

/**
 * Release a string returned by this API. Null is ignored.
 *
 * # Safety
 * `text` must be null or a string previously returned through an
 * out-parameter of this API and not yet freed.
 */
void antipode_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANTIPODE_H */
