#ifndef ACX_H
#define ACX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

/*
 Outcome of a library call.
 */
typedef enum AcxStatus {
  ACX_STATUS_OK = 0,
  ACX_STATUS_INVALID_INPUT = 1,
  ACX_STATUS_NOT_Q_GORENSTEIN = 2,
  ACX_STATUS_NOT_FANO = 3,
  ACX_STATUS_INVARIANT_BREACH = 4,
  ACX_STATUS_NULL_POINTER = 5,
  ACX_STATUS_OVERFLOW = 6,
  ACX_STATUS_PANIC = 7,
} AcxStatus;

/*
 Which index computation [`acx_gorenstein_index`] runs.
 */
typedef enum AcxMethod {
  ACX_METHOD_COMPLEX = 0,
  ACX_METHOD_CONES = 1,
  ACX_METHOD_BOTH = 2,
} AcxMethod;

/*
 Report selector for [`acx_report_json`].
 */
typedef enum AcxReport {
  ACX_REPORT_VALIDATION = 0,
  ACX_REPORT_INFO = 1,
  ACX_REPORT_FAN = 2,
  ACX_REPORT_TROP = 3,
  ACX_REPORT_COMPLEX = 4,
  ACX_REPORT_GORENSTEIN = 5,
} AcxReport;

/*
 Opaque handle to shape-checked arrangement data.
 */
typedef struct AcxArrangement AcxArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *acx_last_error(void);

/*
 Parses a JSON input document and checks its shape.

 # Safety
 `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum AcxStatus acx_arrangement_from_json(const char *json, struct AcxArrangement **out);

/*
 Releases a handle; null is ignored.

 # Safety
 `handle` must come from [`acx_arrangement_from_json`] and not be used
 afterwards.
 */
void acx_arrangement_free(struct AcxArrangement *handle);

/*
 Writes whether the data satisfies all conditions on `(A, P)`.

 # Safety
 `handle` must be a live handle and `valid` a writable pointer.
 */
enum AcxStatus acx_arrangement_validate(const struct AcxArrangement *handle, bool *valid);

/*
 Gorenstein index of the data with its listed fan, or `Σ(−K)` when the
 document lists none.

 # Safety
 `handle` must be a live handle and `out` a writable pointer.
 */
enum AcxStatus acx_gorenstein_index(const struct AcxArrangement *handle,
                                    enum AcxMethod method,
                                    uint64_t *out);

/*
 Serialises one of the reports as JSON into a fresh string.

 # Safety
 `handle` must be a live handle and `out` a writable pointer. The string
 written to `out` must be released with [`acx_string_free`].
 */
enum AcxStatus acx_report_json(const struct AcxArrangement *handle,
                               enum AcxReport kind,
                               char **out);

/*
 Gorenstein index of a bare fan `{"rays": …, "cones": …}`.

 # Safety
 `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum AcxStatus acx_toric_gorenstein_index(const char *json, uint64_t *out);

/*
 Classification report at index `index` for the families in
 `settings[0..len]` (all five when `len` is 0), using `jobs` threads.

 # Safety
 `settings` must point to `len` readable bytes (or be null with
 `len == 0`) and `out` must be writable. Release the result with
 [`acx_string_free`].
 */
enum AcxStatus acx_classify_json(int64_t index,
                                 const uint8_t *settings,
                                 uintptr_t len,
                                 uintptr_t jobs,
                                 char **out);

/*
 Releases a string returned by the library; null is ignored.

 # Safety
 `text` must come from this library and not be used afterwards.
 */
void acx_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACX_H */
