#ifndef LEFSCHETZ_H
#define LEFSCHETZ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  LZ_STATUS_NULL_POINTER = 1,
  LZ_STATUS_INVALID_UTF8 = 2,
  LZ_STATUS_PARSE = 3,
  LZ_STATUS_INVALID_INPUT = 4,
  LZ_STATUS_BUFFER_TOO_SMALL = 5,
  LZ_STATUS_OUT_OF_RANGE = 6,
  LZ_STATUS_PANIC = 7,
} LzStatus;

typedef enum LzFailureMode {
  LZ_FAILURE_MODE_INJECTIVITY = 0,
  LZ_FAILURE_MODE_SURJECTIVITY = 1,
  LZ_FAILURE_MODE_BOTH = 2,
} LzFailureMode;

typedef enum LzBucket {
  LZ_BUCKET_WLP = 0,
  LZ_BUCKET_DEGREE1_INJECTIVITY = 1,
  LZ_BUCKET_EXCEPTIONAL = 2,
} LzBucket;

/**
 * A graded Artinian monomial algebra.
 */
typedef struct LzAlgebra LzAlgebra;

/**
 * Degree-by-degree WLP verdict for one algebra and characteristic.
 */
typedef struct LzReport LzReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *lz_last_error(void);

/**
 * Parses `{"vars": n, "gens": [...]}` or `{"graph": {"vars": n, "edges": [...]}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LzStatus lz_algebra_from_json(const char *json, struct LzAlgebra **out);

/**
 * Flag algebra of the graph on `n` vertices with `num_edges` edges given
 * as consecutive pairs in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * num_edges` readable values (it may be null
 * when `num_edges` is 0) and `out` must be writable.
 */
enum LzStatus lz_algebra_from_edges(size_t n,
                                    const size_t *edges,
                                    size_t num_edges,
                                    struct LzAlgebra **out);

/**
 * # Safety
 * `alg` must come from this library and not be freed twice; null is ignored.
 */
void lz_algebra_free(struct LzAlgebra *alg);

/**
 * Writes `h_0..h_d` into `buf` and the count into `len`. When `cap` is too
 * small only `len` is written and `LZ_STATUS_BUFFER_TOO_SMALL` returned.
 *
 * # Safety
 * `alg` must be a live handle, `buf` must hold `cap` values, `len` writable.
 */
enum LzStatus lz_algebra_hilbert(const struct LzAlgebra *alg, size_t *buf, size_t cap, size_t *len);

/**
 * Runs the rank test in characteristic `characteristic` (0 or a prime).
 *
 * # Safety
 * `alg` must be a live handle and `out` writable.
 */
enum LzStatus lz_wlp(const struct LzAlgebra *alg, uint64_t characteristic, struct LzReport **out);

/**
 * # Safety
 * `report` must come from this library and not be freed twice; null is ignored.
 */
void lz_report_free(struct LzReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum LzStatus lz_report_has_wlp(const struct LzReport *report, bool *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum LzStatus lz_report_num_failures(const struct LzReport *report, size_t *out);

/**
 * The `index`-th failing degree and how it fails.
 *
 * # Safety
 * `report` must be a live handle; `degree` and `mode` writable.
 */
enum LzStatus lz_report_failure(const struct LzReport *report,
                                size_t index,
                                size_t *degree,
                                enum LzFailureMode *mode);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum LzStatus lz_report_bucket(const struct LzReport *report, enum LzBucket *out);

/**
 * The report as JSON; free the string with [`lz_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum LzStatus lz_report_to_json(const struct LzReport *report, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void lz_string_free(char *s);

/**
 * Whether the Bockstein map on the degree-`degree` skeleton is injective,
 * which decides characteristic-zero surjectivity into degree `degree + 1`.
 * The algebra must be quadratic and contain every square.
 *
 * # Safety
 * `alg` must be a live handle and `out` writable.
 */
enum LzStatus lz_bockstein_injective(const struct LzAlgebra *alg, size_t degree, bool *out);

/**
 * Closed-form WLP answer for a tensor spec such as `"2:2,2:2,1:2"` with
 * every order 2; `characteristic` must not be 2.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum LzStatus lz_tensor_predicts_wlp(const char *spec, uint64_t characteristic, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEFSCHETZ_H */
