#ifndef KRULL_FORGE_H
#define KRULL_FORGE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KfStatus {
  KF_STATUS_OK = 0,
  KF_STATUS_NULL_POINTER = 1,
  KF_STATUS_INVALID_UTF8 = 2,
  KF_STATUS_PARSE_ERROR = 3,
  KF_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A value does not fit the requested C type.
   */
  KF_STATUS_OVERFLOW = 5,
  KF_STATUS_PANIC = 6,
} KfStatus;

/**
 * A finitely generated abelian group.
 */
typedef struct KfGroup KfGroup;

/**
 * Result of a full realization run.
 */
typedef struct KfReport KfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *kf_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *kf_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void kf_string_free(char *s);

/**
 * Parses a group such as `"Z^2 x Z/4"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum KfStatus kf_group_parse(const char *spec, struct KfGroup **out);

/**
 * # Safety
 * `g` must be NULL or a group returned by this library, not yet freed.
 */
void kf_group_free(struct KfGroup *g);

/**
 * # Safety
 * `g` must be a live group and `out` writable.
 */
enum KfStatus kf_group_free_rank(const struct KfGroup *g, size_t *out);

/**
 * Number of invariant factors.
 *
 * # Safety
 * `g` must be a live group and `out` writable.
 */
enum KfStatus kf_group_torsion_len(const struct KfGroup *g, size_t *out);

/**
 * The `i`-th invariant factor, smallest first.
 *
 * # Safety
 * `g` must be a live group and `out` writable.
 */
enum KfStatus kf_group_torsion_at(const struct KfGroup *g, size_t i, int64_t *out);

/**
 * Writes a newly allocated string; free it with [`kf_string_free`].
 *
 * # Safety
 * `g` must be a live group and `out` writable.
 */
enum KfStatus kf_group_to_string(const struct KfGroup *g, char **out);

/**
 * # Safety
 * `a` and `b` must be live groups and `out` writable.
 */
enum KfStatus kf_group_is_isomorphic(const struct KfGroup *a, const struct KfGroup *b, bool *out);

/**
 * Runs the full realization pipeline. A report is written even when the
 * verdict is a failure; check it with [`kf_report_passed`].
 *
 * # Safety
 * `group` must be a NUL-terminated string and `out` writable.
 */
enum KfStatus kf_realize(const char *group,
                         uint32_t orbits,
                         uint64_t bound,
                         size_t samples,
                         uint64_t seed,
                         struct KfReport **out);

/**
 * # Safety
 * `r` must be NULL or a report returned by this library, not yet freed.
 */
void kf_report_free(struct KfReport *r);

/**
 * # Safety
 * `r` must be a live report and `out` writable.
 */
enum KfStatus kf_report_passed(const struct KfReport *r, bool *out);

/**
 * The report as JSON. With `include_timings` false the output depends only
 * on the inputs.
 *
 * # Safety
 * `r` must be a live report and `out` writable.
 */
enum KfStatus kf_report_to_json(const struct KfReport *r, bool include_timings, char **out);

/**
 * The computed class group of the report.
 *
 * # Safety
 * `r` must be a live report and `out` writable.
 */
enum KfStatus kf_report_result_group(const struct KfReport *r, struct KfGroup **out);

/**
 * Class group of the skew Laurent extension for class group `c`, induced
 * action `sigma` and killed subgroup generators.
 *
 * `sigma` is an n×n row-major matrix, n the number of generators of `c`,
 * whose columns are the images of the generators. `killed` holds
 * `killed_count` elements of `c` as consecutive rows of n coordinates and
 * may be NULL when `killed_count` is 0.
 *
 * # Safety
 * `sigma` must point to n*n values, `killed` to `killed_count`*n values.
 */
enum KfStatus kf_class_group_of_skew_extension(const struct KfGroup *c,
                                               const int64_t *sigma,
                                               const int64_t *killed,
                                               size_t killed_count,
                                               struct KfGroup **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KRULL_FORGE_H */
