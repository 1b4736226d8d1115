#ifndef KSTAB_H
#define KSTAB_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KstabStatus {
  KSTAB_STATUS_OK = 0,
  KSTAB_STATUS_NULL_POINTER = 1,
  KSTAB_STATUS_INVALID_UTF8 = 2,
  KSTAB_STATUS_INVALID_INPUT = 3,
  KSTAB_STATUS_UNKNOWN_EXAMPLE = 4,
  /**
   * The operation needs a concrete polarization but got a ray, or vice versa.
   */
  KSTAB_STATUS_WRONG_SHAPE = 5,
  KSTAB_STATUS_COMPUTATION = 6,
  KSTAB_STATUS_PANIC = 7,
} KstabStatus;

typedef enum KstabVerdict {
  KSTAB_VERDICT_STABLE = 0,
  KSTAB_VERDICT_UNSTABLE = 1,
  KSTAB_VERDICT_FUTAKI_OBSTRUCTED = 2,
  KSTAB_VERDICT_SEMISTABLE_BOUNDARY = 3,
} KstabVerdict;

/**
 * A parsed input document: a concrete polarization or a ray of them.
 */
typedef struct KstabData KstabData;

typedef struct KstabReport KstabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next kstab call on the same thread.
 */
const char *kstab_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *kstab_version(void);

/**
 * Parses an input document.
 *
 * # Safety
 * `json` must be NULL or a NUL-terminated string; `out` must be NULL or
 * point to writable storage for a handle.
 */
enum KstabStatus kstab_data_from_json(const char *json, struct KstabData **out);

/**
 * Loads a built-in example (or `KSTAB_REGISTRY` override) by name;
 * `NAME-family` selects the ray form.
 *
 * # Safety
 * As for `kstab_data_from_json`.
 */
enum KstabStatus kstab_data_from_registry(const char *name, struct KstabData **out);

/**
 * Member of a ray with upper endpoint `s` (`"p/q"` or a decimal).
 *
 * # Safety
 * `data` must be NULL or a live handle; `s` and `out` as above.
 */
enum KstabStatus kstab_data_instantiate(const struct KstabData *data,
                                        const char *s,
                                        struct KstabData **out);

/**
 * Writes whether the handle is a ray of polarizations.
 *
 * # Safety
 * `data` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_data_is_family(const struct KstabData *data, bool *out);

/**
 * # Safety
 * `data` must be NULL or a handle from this library not yet freed.
 */
void kstab_data_free(struct KstabData *data);

/**
 * Stability verdict of a concrete polarization.
 *
 * # Safety
 * `data` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_check(const struct KstabData *data, struct KstabReport **out);

/**
 * # Safety
 * `report` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_report_verdict(const struct KstabReport *report, enum KstabVerdict *out);

/**
 * The Futaki value `L(t ↦ t)` as an exact `"p/q"` string.
 *
 * # Safety
 * `report` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_report_futaki(const struct KstabReport *report, char **out);

/**
 * The full report as JSON.
 *
 * # Safety
 * `report` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_report_to_json(const struct KstabReport *report, char **out);

/**
 * # Safety
 * `report` must be NULL or a handle from this library not yet freed.
 */
void kstab_report_free(struct KstabReport *report);

/**
 * Threshold report of a ray as JSON; `precision` is the bracket width.
 *
 * # Safety
 * `data` must be NULL or a live handle; strings NUL-terminated; `out` NULL
 * or writable.
 */
enum KstabStatus kstab_threshold_json(const struct KstabData *data,
                                      const char *precision,
                                      char **out);

/**
 * `∫ ℓ P` for the document's `ke_weight`, as a `"p/q"` string.
 *
 * # Safety
 * `data` must be NULL or a live handle; `out` NULL or writable.
 */
enum KstabStatus kstab_ke_barycenter(const struct KstabData *data, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void kstab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSTAB_H */
