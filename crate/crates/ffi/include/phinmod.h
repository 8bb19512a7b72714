#ifndef PHINMOD_H
#define PHINMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four match the command-line exit codes.
 */
typedef enum PhinmodStatus {
  PHINMOD_STATUS_OK = 0,
  PHINMOD_STATUS_INVALID = 1,
  PHINMOD_STATUS_UNSUPPORTED = 2,
  PHINMOD_STATUS_INTERNAL = 3,
  PHINMOD_STATUS_NULL_ARGUMENT = 4,
  PHINMOD_STATUS_BAD_STRING = 5,
} PhinmodStatus;

/**
 * Opaque session handle.
 */
typedef struct PhinmodSession PhinmodSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session. `n = 0` lets each payload determine the matrix size.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum PhinmodStatus phinmod_session_new(uint64_t p, size_t n, size_t f, struct PhinmodSession **out);

/**
 * Releases a session. Passing null is a no-op.
 *
 * # Safety
 * `session` must be null or a handle from [`phinmod_session_new`] that has
 * not been freed.
 */
void phinmod_session_free(struct PhinmodSession *session);

/**
 * Runs `cmd` on the JSON document `input` (a single payload, or an array
 * of payloads when `batch` is true). On return `*out` holds the JSON
 * report, including error reports, or null if the arguments were
 * unusable.
 *
 * # Safety
 * `session` must be a live handle; `cmd` and `input` must be
 * NUL-terminated strings; `out` must be valid for one pointer write.
 */
enum PhinmodStatus phinmod_run(const struct PhinmodSession *session,
                               const char *cmd,
                               const char *input,
                               bool batch,
                               char **out);

/**
 * Frees a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by [`phinmod_run`] that has not
 * been freed.
 */
void phinmod_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *phinmod_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *phinmod_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHINMOD_H */
