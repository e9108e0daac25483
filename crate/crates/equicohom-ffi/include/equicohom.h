#ifndef EQUICOHOM_H
#define EQUICOHOM_H

/* Generated by cbindgen from equicohom-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  EQUICOHOM_STATUS_OK = 0,
  EQUICOHOM_STATUS_NULL_ARGUMENT = 1,
  EQUICOHOM_STATUS_INVALID_UTF8 = 2,
  EQUICOHOM_STATUS_PARSE_ERROR = 3,
  EQUICOHOM_STATUS_VALIDATION_ERROR = 4,
  EQUICOHOM_STATUS_HYPOTHESIS_ERROR = 5,
  EQUICOHOM_STATUS_INTERNAL_ERROR = 6,
} equicohom_status;

/**
 * Opaque compiled bundle.
 */
typedef struct equicohom_bundle equicohom_bundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Detail message of the most recent failure on this thread. Valid until
 * the next failing call; never null.
 */
const char *equicohom_last_error(void);

/**
 * Parse and fully validate a bundle from JSON. On success the handle must
 * be released with `equicohom_bundle_free`.
 */
equicohom_status equicohom_bundle_parse(const char *json, equicohom_bundle **out);

void equicohom_bundle_free(equicohom_bundle *bundle);

/**
 * Structural validation report (JSON).
 */
equicohom_status equicohom_validate(const equicohom_bundle *bundle, char **out_report);

/**
 * Invariant factors in one flavor: "bredon" or "twisted". Pass a null
 * degree list to use the bundle's requested degrees.
 */
equicohom_status equicohom_cohomology(const equicohom_bundle *bundle,
                                      const char *flavor,
                                      const uint32_t *degrees,
                                      size_t degrees_len,
                                      char **out_report);

/**
 * Both pipelines plus the degreewise comparison verdicts.
 */
equicohom_status equicohom_compare(const equicohom_bundle *bundle,
                                   const uint32_t *degrees,
                                   size_t degrees_len,
                                   size_t samples,
                                   uint64_t seed,
                                   char **out_report);

/**
 * Classification round-trip verdicts at one degree.
 */
equicohom_status equicohom_classify(const equicohom_bundle *bundle,
                                    uint32_t degree,
                                    size_t samples,
                                    uint64_t seed,
                                    char **out_report);

/**
 * Vertical-homotopy verdicts for generated cohomologous pairs.
 */
equicohom_status equicohom_homotopy(const equicohom_bundle *bundle,
                                    uint32_t degree,
                                    size_t pairs,
                                    uint64_t seed,
                                    char **out_report);

/**
 * Release a string returned through an out-parameter.
 */
void equicohom_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUICOHOM_H */
