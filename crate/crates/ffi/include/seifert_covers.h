#ifndef SEIFERT_COVERS_H
#define SEIFERT_COVERS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SfsStatus {
  SFS_STATUS_OK = 0,
  SFS_STATUS_NULL_POINTER = 1,
  SFS_STATUS_INVALID_UTF8 = 2,
  SFS_STATUS_PARSE_ERROR = 3,
  SFS_STATUS_INVALID_INVARIANTS = 4,
  SFS_STATUS_INVALID_HOMOMORPHISM = 5,
  SFS_STATUS_INDEX_OUT_OF_RANGE = 6,
  SFS_STATUS_TOO_LARGE = 7,
  SFS_STATUS_INTERNAL = 8,
  SFS_STATUS_PANIC = 9,
} SfsStatus;

/**
 * Opaque Seifert invariants.
 */
typedef struct SfsInvariants SfsInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sfs_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sfs_string_free(char *s);

/**
 * Parses `{e;(t,g);(a1,b1),...}` and checks it is a valid symbol.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SfsStatus sfs_invariants_parse(const char *text, struct SfsInvariants **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void sfs_invariants_free(struct SfsInvariants *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SfsStatus sfs_invariants_to_string(const struct SfsInvariants *h, char **out);

/**
 * First homology of the fundamental group, e.g. `Z^2 + Z/4`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SfsStatus sfs_invariants_h1(const struct SfsInvariants *h, char **out);

/**
 * Number of epimorphisms onto Z/2.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SfsStatus sfs_epimorphism_count(const struct SfsInvariants *h, size_t *out);

/**
 * The `index`-th epimorphism as `gen=bit,...`, in enumeration order.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum SfsStatus sfs_epimorphism_at(const struct SfsInvariants *h, size_t index, char **out);

/**
 * Invariants of the double cover for `phi` (`gen=bit,...`).
 *
 * # Safety
 * `h` must be a live handle, `phi` nul-terminated, `out` writable.
 */
enum SfsStatus sfs_double_cover(const struct SfsInvariants *h,
                                const char *phi,
                                struct SfsInvariants **out);

/**
 * Checks the predicted cover against the rewritten kernel. `out_pass`
 * receives the verdict; `out_json` (may be null) the full report.
 *
 * # Safety
 * `h` must be a live handle, `phi` nul-terminated, `out_pass` writable,
 * `out_json` null or writable.
 */
enum SfsStatus sfs_verify(const struct SfsInvariants *h,
                          const char *phi,
                          bool *out_pass,
                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEIFERT_COVERS_H */
