#ifndef QDIFF_H
#define QDIFF_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum QdiffStatus {
  QDIFF_STATUS_OK = 0,
  QDIFF_STATUS_NULL_POINTER = 1,
  QDIFF_STATUS_INVALID_UTF8 = 2,
  QDIFF_STATUS_PARSE_ERROR = 3,
  QDIFF_STATUS_INVALID_SPEC = 4,
  QDIFF_STATUS_WRONG_ALGEBRA = 5,
  QDIFF_STATUS_BUDGET_EXCEEDED = 6,
  QDIFF_STATUS_COMPUTATION_FAILED = 7,
  QDIFF_STATUS_PANIC = 8,
} QdiffStatus;

/**
 * An algebra with its rewriting tables and caches.
 */
typedef struct QdiffAlgebra QdiffAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a `.qalg` document into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QdiffStatus qdiff_algebra_from_qalg(const char *text, struct QdiffAlgebra **out);

/**
 * Builds a catalog algebra from a name such as `aiii(2)` or `quantum-plane`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QdiffStatus qdiff_algebra_from_catalog(const char *name, struct QdiffAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `alg` must come from this library and not be used afterwards.
 */
void qdiff_algebra_free(struct QdiffAlgebra *alg);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
uintptr_t qdiff_algebra_gens(const struct QdiffAlgebra *alg);

/**
 * Runs both confluence certificates; `*passed` receives the verdict.
 *
 * # Safety
 * `alg` must be a live handle and `passed` a valid pointer.
 */
enum QdiffStatus qdiff_validate(const struct QdiffAlgebra *alg, bool *passed);

/**
 * Normal form of a tensor expression such as `X4.X1`.
 *
 * # Safety
 * Pointers must be valid; `expr` NUL-terminated.
 */
enum QdiffStatus qdiff_normal_form(const struct QdiffAlgebra *alg, const char *expr, char **out);

/**
 * The q-symmetrization projector applied to a tensor expression.
 *
 * # Safety
 * Pointers must be valid; `expr` NUL-terminated.
 */
enum QdiffStatus qdiff_qsym(const struct QdiffAlgebra *alg, const char *expr, char **out);

/**
 * Star product of two polynomials under the default dual scheme.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum QdiffStatus qdiff_star(const struct QdiffAlgebra *alg,
                            const char *f,
                            const char *g,
                            char **out);

/**
 * The q-derivative along generator `gen` (1-based) of a polynomial.
 *
 * # Safety
 * Pointers must be valid; `poly` NUL-terminated.
 */
enum QdiffStatus qdiff_derive(const struct QdiffAlgebra *alg,
                              uintptr_t gen,
                              const char *poly,
                              char **out);

/**
 * Copy of the last failure message on this thread, or null if none.
 * Release with `qdiff_string_free`.
 */
char *qdiff_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qdiff_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDIFF_H */
