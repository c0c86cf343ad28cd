#ifndef MDOP_H
#define MDOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum MdopStatus {
  MDOP_STATUS_OK = 0,
  MDOP_STATUS_VERIFY_FAILED = 1,
  MDOP_STATUS_PARSE = 2,
  MDOP_STATUS_PARAMETER = 3,
  MDOP_STATUS_DOMAIN = 4,
  MDOP_STATUS_LENGTH_MISMATCH = 5,
  MDOP_STATUS_DEGREE_EXCEEDED = 6,
  MDOP_STATUS_POLE = 7,
  MDOP_STATUS_SINGULAR = 8,
  MDOP_STATUS_NULL_POINTER = 9,
  MDOP_STATUS_INVALID_UTF8 = 10,
  MDOP_STATUS_INTERNAL = 11,
} MdopStatus;

/**
 * Opaque handle: a cone of rank r and multiplicity d with Jack data up to a degree.
 */
typedef struct MdopContext MdopContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *mdop_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *mdop_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mdop_string_free(char *s);

/**
 * Builds a context for rank `r`, multiplicity `d` (e.g. "5/2") and Jack degree `max_degree`.
 *
 * # Safety
 * `d` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MdopStatus mdop_context_new(size_t r,
                                 const char *d,
                                 uint32_t max_degree,
                                 struct MdopContext **out);

/**
 * Releases a context. NULL is ignored.
 *
 * # Safety
 * `ctx` must come from `mdop_context_new` and not have been freed.
 */
void mdop_context_free(struct MdopContext *ctx);

/**
 * Rank of the context.
 *
 * # Safety
 * `ctx` must be a live context or NULL.
 */
size_t mdop_context_rank(const struct MdopContext *ctx);

/**
 * Evaluates a family at (m, x) and writes the exact value as "p/q".
 *
 * `family` is "meixner", "charlier" or "krawtchouk"; `params` looks like
 * "alpha=7/2;c=1/3", "a=2" or "p=1/3;N=3"; `m` and `x` are comma-joined parts.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum MdopStatus mdop_eval(const struct MdopContext *ctx,
                          const char *family,
                          const char *params,
                          const char *m,
                          const char *x,
                          char **out_value);

/**
 * Runs one identity check and writes the report as JSON.
 *
 * `identity` is "difference", "recurrence", "genfunc" or "orthogonality"
 * (the last only for krawtchouk). `weight` is the grid weight or series degree.
 * Returns `MDOP_STATUS_VERIFY_FAILED` with the report still written when a case fails.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum MdopStatus mdop_verify_json(const struct MdopContext *ctx,
                                 const char *identity,
                                 const char *family,
                                 const char *params,
                                 uint32_t weight,
                                 char **out_json);

/**
 * Runs the combined evidence suite at weight budget `budget` and writes its JSON report.
 *
 * # Safety
 * All pointers must be valid.
 */
enum MdopStatus mdop_conjecture_json(const struct MdopContext *ctx,
                                     uint32_t budget,
                                     uint64_t seed,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDOP_H */
