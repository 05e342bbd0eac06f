/* ejalab C ABI — verification workbench for probabilistic models and euclidean Jordan algebras */

#ifndef EJALAB_H
#define EJALAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every fallible entry point.
 */
typedef enum EjalabStatus {
  EJALAB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EJALAB_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was outside its domain (unknown suite, family, size...).
   */
  EJALAB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A model document failed to parse or validate.
   */
  EJALAB_STATUS_PARSE_ERROR = 3,
  /**
   * A panic escaped the library.
   */
  EJALAB_STATUS_INTERNAL = 4,
} EjalabStatus;

/**
 * Opaque verification-report handle (forward-declared in the header).
 */
typedef struct EjalabReport EjalabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string (do not free).
 */
const char *ejalab_version(void);

/**
 * Run a named suite (`lemma1`, `theorem2`, `snake`, `bitball`,
 * `appendixB`, `report`). `family` may be null for the default battery;
 * when present it must name a supported family and `size` its parameter.
 * `samples = 0` selects the default sample count.
 */
enum EjalabStatus ejalab_run_suite(const char *suite,
                                   const char *family,
                                   uint32_t size,
                                   uint64_t seed,
                                   uint32_t samples,
                                   struct EjalabReport **out);

/**
 * Run the full acceptance battery.
 */
enum EjalabStatus ejalab_acceptance(uint64_t seed, uint32_t samples, struct EjalabReport **out);

/**
 * Validate a model document (the JSON format described in the repository
 * docs) supplied as text.
 */
enum EjalabStatus ejalab_validate_model(const char *json, uint64_t seed, struct EjalabReport **out);

/**
 * Sampled rank-2 state-space coordinates as CSV text (caller frees).
 */
enum EjalabStatus ejalab_ball_samples_csv(const char *family,
                                          uint32_t size,
                                          uint32_t count,
                                          uint64_t seed,
                                          char **out);

/**
 * Whether every check in the report passed.
 */
bool ejalab_report_passed(const struct EjalabReport *report);

/**
 * Number of checks in the report (0 for a null handle).
 */
uint32_t ejalab_report_check_count(const struct EjalabReport *report);

/**
 * Canonical JSON rendering (byte-stable for a fixed seed; caller frees).
 */
char *ejalab_report_json(const struct EjalabReport *report);

/**
 * Markdown rendering (caller frees).
 */
char *ejalab_report_markdown(const struct EjalabReport *report);

/**
 * Release a report handle.
 *
 * # Safety
 * `report` must have come from this library and not been freed before.
 */
void ejalab_report_free(struct EjalabReport *report);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have come from this library and not been freed before.
 */
void ejalab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EJALAB_H */
