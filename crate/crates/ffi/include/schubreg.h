#ifndef SCHUBREG_H
#define SCHUBREG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SchubregMethod {
  SCHUBREG_METHOD_AUTO = 0,
  SCHUBREG_METHOD_FORMULA = 1,
  SCHUBREG_METHOD_GROEBNER = 2,
  SCHUBREG_METHOD_BOTH = 3,
} SchubregMethod;

typedef enum SchubregStatus {
  SCHUBREG_STATUS_OK = 0,
  SCHUBREG_STATUS_NULL_POINTER = 1,
  SCHUBREG_STATUS_INVALID_UTF8 = 2,
  SCHUBREG_STATUS_PARSE_ERROR = 3,
  SCHUBREG_STATUS_NOT_BRUHAT_COMPARABLE = 4,
  SCHUBREG_STATUS_FORMULA_INAPPLICABLE = 5,
  SCHUBREG_STATUS_BUDGET = 6,
  /**
   * The report exists but holds no value for the requested field.
   */
  SCHUBREG_STATUS_ABSENT = 7,
  SCHUBREG_STATUS_INTERNAL = 8,
} SchubregStatus;

/**
 * Opaque permutation handle.
 */
typedef struct SchubregPerm SchubregPerm;

/**
 * Opaque regularity report handle.
 */
typedef struct SchubregReport SchubregReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library from the same thread.
 */
const char *schubreg_last_error_message(void);

/**
 * Parses `7314562` or `7,3,1,4,5,6,2`.
 *
 * # Safety
 * `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
 */
enum SchubregStatus schubreg_perm_parse(const char *text, struct SchubregPerm **out);

/**
 * # Safety
 * `perm` must be NULL or come from [`schubreg_perm_parse`], freed once.
 */
void schubreg_perm_free(struct SchubregPerm *perm);

/**
 * Number of inversions.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum SchubregStatus schubreg_perm_length(const struct SchubregPerm *perm, size_t *out);

/**
 * Whether the permutation avoids 3412.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum SchubregStatus schubreg_perm_is_covexillary(const struct SchubregPerm *perm, bool *out);

/**
 * Regularity of the tangent cone of `X_w` at `e_v`. `budget_ms = 0` means
 * no time limit.
 *
 * # Safety
 * Pointers must be NULL or valid; `out` receives a handle to free with
 * [`schubreg_report_free`].
 */
enum SchubregStatus schubreg_regularity(const struct SchubregPerm *v,
                                        const struct SchubregPerm *w,
                                        enum SchubregMethod method,
                                        uint64_t budget_ms,
                                        struct SchubregReport **out);

/**
 * # Safety
 * `report` must be NULL or come from [`schubreg_regularity`], freed once.
 */
void schubreg_report_free(struct SchubregReport *report);

/**
 * The regularity; `proven` is false when it rests on Cohen-Macaulayness that
 * is only conjectured (non-covexillary `w`).
 *
 * # Safety
 * `report` and `reg` must be valid; `proven` may be NULL.
 */
enum SchubregStatus schubreg_report_reg(const struct SchubregReport *report,
                                        size_t *reg,
                                        bool *proven);

/**
 * Whether the formula and the Groebner route disagreed.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum SchubregStatus schubreg_report_is_discrepant(const struct SchubregReport *report, bool *out);

/**
 * The whole report as JSON. Free the string with [`schubreg_string_free`].
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum SchubregStatus schubreg_report_to_json(const struct SchubregReport *report, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void schubreg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBREG_H */
