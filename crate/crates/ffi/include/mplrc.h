#ifndef MPLRC_H
#define MPLRC_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MplrcStatus {
  MPLRC_STATUS_OK = 0,
  MPLRC_STATUS_NULL_POINTER = 1,
  MPLRC_STATUS_INVALID_ARGUMENT = 2,
  MPLRC_STATUS_VERIFICATION_FAILED = 3,
  MPLRC_STATUS_FORMAT = 4,
  MPLRC_STATUS_REPAIR_FAILED = 5,
  MPLRC_STATUS_PANIC = 6,
} MplrcStatus;

/**
 * Opaque code handle.
 */
typedef struct MplrcCode MplrcCode;

/**
 * Numeric inputs of a construction; fields a family does not use are
 * ignored.
 */
typedef struct MplrcBuildArgs {
  uint64_t q;
  uintptr_t r;
  uintptr_t delta;
  uintptr_t g;
  uintptr_t m_codes;
  uintptr_t n_blocks;
  uintptr_t v;
  uintptr_t tau;
} MplrcBuildArgs;

typedef struct MplrcCodeParams {
  uint64_t q;
  uintptr_t n;
  uintptr_t k;
  bool has_locality;
  uintptr_t r;
  uintptr_t delta;
} MplrcCodeParams;

typedef struct MplrcReport {
  uintptr_t n;
  uintptr_t k;
  uintptr_t d;
  bool d_exact;
  int64_t bound;
  bool optimal;
  bool certificate_valid;
} MplrcReport;

typedef struct MplrcCor1Row {
  uintptr_t n_blocks;
  uintptr_t m_codes;
  uintptr_t r;
  uintptr_t delta;
  uintptr_t n;
  uintptr_t k;
  uintptr_t d;
} MplrcCor1Row;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a code of the named family (`"cor1"`, `"thm6"`, ...). `thm2`
 * needs existing codes; see [`mplrc_compose`].
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MplrcStatus mplrc_construct(const char *family,
                                 struct MplrcBuildArgs args,
                                 struct MplrcCode **out);

/**
 * Composes `n_blocks - 1` copies of `c1` with `cn` through the default
 * square Vandermonde matrix. `c1` must carry a locality certificate.
 *
 * # Safety
 * Handles must be live; `out` must be a valid pointer.
 */
enum MplrcStatus mplrc_compose(const struct MplrcCode *c1,
                               const struct MplrcCode *cn,
                               uintptr_t n_blocks,
                               struct MplrcCode **out);

/**
 * Parses a code file.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be a valid pointer.
 */
enum MplrcStatus mplrc_code_from_json(const char *json, struct MplrcCode **out);

/**
 * Canonical JSON of the code. Release with [`mplrc_string_free`].
 *
 * # Safety
 * `code` must be live; `out` must be a valid pointer.
 */
enum MplrcStatus mplrc_code_to_json(const struct MplrcCode *code, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void mplrc_string_free(char *s);

/**
 * # Safety
 * `code` must come from this library, or be null. It must not be used
 * afterwards.
 */
void mplrc_code_free(struct MplrcCode *code);

/**
 * # Safety
 * `code` must be live; `out` must be a valid pointer.
 */
enum MplrcStatus mplrc_code_params(const struct MplrcCode *code, struct MplrcCodeParams *out);

/**
 * Recomputes the distance, the certificate and optimality. Returns
 * `VerificationFailed` (with the report filled in) when the code carries a
 * construction claim it does not meet.
 *
 * # Safety
 * `code` must be live; `out` must be a valid pointer.
 */
enum MplrcStatus mplrc_code_verify(const struct MplrcCode *code, struct MplrcReport *out);

/**
 * Writes `msg * G` (length n) into `out`.
 *
 * # Safety
 * `msg` must point to `msg_len` values and `out` to `out_len` writable
 * values.
 */
enum MplrcStatus mplrc_code_encode(const struct MplrcCode *code,
                                   const uint32_t *msg,
                                   uintptr_t msg_len,
                                   uint32_t *out,
                                   uintptr_t out_len);

/**
 * Restores erased symbols of `word` in place. `erased[j] != 0` marks
 * position `j`; erased entries of `word` are ignored on input.
 *
 * # Safety
 * `word` and `erased` must each point to `len` values.
 */
enum MplrcStatus mplrc_code_repair(const struct MplrcCode *code,
                                   uint32_t *word,
                                   const uint8_t *erased,
                                   uintptr_t len);

/**
 * Writes up to `cap` parameter rows into `out` and the total number into
 * `count`. `out` may be null to query the count.
 *
 * # Safety
 * `out`, if non-null, must point to `cap` writable rows; `count` must be
 * valid.
 */
enum MplrcStatus mplrc_enumerate_cor1(uint64_t q,
                                      struct MplrcCor1Row *out,
                                      uintptr_t cap,
                                      uintptr_t *count);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *mplrc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MPLRC_H */
