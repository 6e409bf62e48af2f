/* C interface to the fdclab workbench. */

#pragma once

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi; edit the Rust source, not this file. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Error codes returned by fallible functions.
typedef enum FdclabStatus {
  FDCLAB_STATUS_OK = 0,
  FDCLAB_STATUS_NULL_ARGUMENT = 1,
  FDCLAB_STATUS_INVALID_UTF8 = 2,
  FDCLAB_STATUS_PARSE_ERROR = 3,
  FDCLAB_STATUS_UNKNOWN_EXPERIMENT = 4,
  FDCLAB_STATUS_RUN_ERROR = 5,
} FdclabStatus;

// Opaque handle to a parsed group spec.
typedef struct FdclabSpec FdclabSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *fdclab_version(void);

// Message for the most recent error on this thread; do not free.
// The pointer stays valid until the next failing call on the thread.
const char *fdclab_last_error(void);

// Number of known experiments.
uintptr_t fdclab_experiment_count(void);

// Name of experiment `index`, or null when out of range; do not free.
const char *fdclab_experiment_name(uintptr_t index);

// Parses a spec from UTF-8 text into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid
// pointer; on success `*out` owns the handle.
enum FdclabStatus fdclab_spec_parse(const char *text, struct FdclabSpec **out);

// Releases a handle produced by `fdclab_spec_parse`. Null is a no-op.
//
// # Safety
// `spec` must have come from `fdclab_spec_parse` and not been freed.
void fdclab_spec_free(struct FdclabSpec *spec);

// JSON summary of a parsed spec (field, dimension, generators, ...).
// The caller frees the string with `fdclab_string_free`.
//
// # Safety
// `spec` must be a live handle.
char *fdclab_spec_summary(const struct FdclabSpec *spec);

// Runs an experiment against the spec. On success `*out_json` holds a
// JSON envelope `{"report": ..., "files": {name: contents}, "exit_code": n}`
// to free with `fdclab_string_free`.
//
// # Safety
// `spec` must be a live handle, `experiment` a valid NUL-terminated
// string, `out_json` a valid pointer.
enum FdclabStatus fdclab_run_experiment(const struct FdclabSpec *spec,
                                        const char *experiment,
                                        uint64_t seed,
                                        char **out_json);

// Frees a string allocated by this library. Null is a no-op.
//
// # Safety
// `s` must have been returned by an fdclab function that allocates.
void fdclab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
