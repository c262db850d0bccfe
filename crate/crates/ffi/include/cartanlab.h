/* C interface to the cartanlab modular Lie algebra engine. */

#ifndef CARTANLAB_H
#define CARTANLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define CARTAN_OK 0

/**
 * A required pointer argument was null.
 */
#define CARTAN_ERR_NULL -1

/**
 * A string argument was not valid UTF-8.
 */
#define CARTAN_ERR_ENCODING -2

/**
 * The family tag or parameter combination is invalid.
 */
#define CARTAN_ERR_INVALID_SPEC -3

/**
 * The requested counterexample name is unknown.
 */
#define CARTAN_ERR_UNKNOWN_NAME -4

/**
 * An internal invariant failed (library bug).
 */
#define CARTAN_ERR_INTERNAL -5

/**
 * Simplicity verdicts returned by `cartan_algebra_simplicity`.
 */
#define CARTAN_SIMPLE 1

#define CARTAN_NOT_SIMPLE 2

#define CARTAN_INCONCLUSIVE 3

/**
 * Opaque algebra handle.
 */
typedef struct CartanAlgebra CartanAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Construct an algebra.
 *
 * `family` is one of "W", "S", "H", "K", "M", "STau", "SPhi", "H1st",
 * "H2nd".  `n` points to `n_len` shape exponents.  `l` is the 0-based
 * distinguished index for SPhi/H2nd (pass 0 otherwise).  `alpha` is an
 * optional "i,j,c;i,j,c" list for H1st (pass NULL otherwise; p may be 0 for
 * M, which lives at p = 5).  On success `*out` owns the new handle.
 *
 * # Safety
 * `family` must be a valid NUL-terminated string, `n` valid for `n_len`
 * reads, `out` valid for one write; `alpha` null or NUL-terminated.
 */
int32_t cartan_algebra_new(const char *family,
                           uint64_t p,
                           const uint32_t *n,
                           uintptr_t n_len,
                           int64_t l,
                           const char *alpha,
                           struct CartanAlgebra **out);

/**
 * Release a handle created by `cartan_algebra_new`.  Null is ignored.
 *
 * # Safety
 * `handle` must be null or a pointer returned by `cartan_algebra_new` that
 * has not already been freed.
 */
void cartan_algebra_free(struct CartanAlgebra *handle);

/**
 * Dimension of the algebra; 0 if the handle is null.
 *
 * # Safety
 * `handle` must be null or a live handle.
 */
uintptr_t cartan_algebra_dim(const struct CartanAlgebra *handle);

/**
 * Depth s and height h of the standard grading or filtration.
 *
 * # Safety
 * `handle` must be a live handle; `depth` and `height` valid for one write.
 */
int32_t cartan_algebra_invariants(const struct CartanAlgebra *handle,
                                  int64_t *depth,
                                  int64_t *height);

/**
 * Decide simplicity with the given seed.  Returns `CARTAN_SIMPLE`,
 * `CARTAN_NOT_SIMPLE`, `CARTAN_INCONCLUSIVE` or a negative error code.
 *
 * # Safety
 * `handle` must be a live handle.
 */
int32_t cartan_algebra_simplicity(const struct CartanAlgebra *handle, uint64_t seed);

/**
 * Run the family's generator criterion.  On success writes 1 to `*passed`
 * if every condition holds, else 0.
 *
 * # Safety
 * `handle` must be a live handle and `passed` valid for one write.
 */
int32_t cartan_algebra_verify(const struct CartanAlgebra *handle, int32_t *passed);

/**
 * Produce the criterion report as a JSON document in `*out` (caller frees
 * with `cartan_string_free`).
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
int32_t cartan_algebra_verify_json(const struct CartanAlgebra *handle, char **out);

/**
 * Structure-constant dump of the algebra as a JSON document in `*out`
 * (caller frees with `cartan_string_free`).
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
int32_t cartan_algebra_dump_json(const struct CartanAlgebra *handle, char **out);

/**
 * Replay a stock counterexample ("rumynin" or "contact_p3").  On success
 * writes 1 to `*reproduced` if every documented assertion holds.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `reproduced` valid for
 * one write.
 */
int32_t cartan_counterexample(const char *name, int32_t *reproduced);

/**
 * Release a string returned by this library.  Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not
 * already been freed.
 */
void cartan_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTANLAB_H */
