#ifndef THETA_CRYSTAL_H
#define THETA_CRYSTAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_CLAIM_FAILED = 1,
  TC_STATUS_INVALID_ARGUMENT = 2,
  TC_STATUS_INCONCLUSIVE = 3,
  TC_STATUS_NULL_POINTER = 4,
  TC_STATUS_PANIC = 5,
} TcStatus;

// Holds the group, which is expensive to build. Not thread-safe to free
// while another call is using it; concurrent `tc_run` calls are fine.
typedef struct TcContext TcContext;

// A finished report and its JSON rendering.
typedef struct TcReport TcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call on the same thread that returns a
// [`TcStatus`].
const char *tc_last_error(void);

// Library version as a static NUL-terminated string.
const char *tc_version(void);

// Builds a context. Free it with `tc_context_free`.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum TcStatus tc_context_new(struct TcContext **out);

// # Safety
// `ctx` must come from `tc_context_new` and not be freed twice. Null is
// ignored.
void tc_context_free(struct TcContext *ctx);

// Runs one command (`"group"`, `"rep"`, `"jacobian"`, ..., `"verify-all"`).
//
// `params_json` may be null or a JSON object with any of `degree`, `max`,
// `precision`, `cutoff` (string, `"7/2"` or `"3.5"`) and `seed`.
//
// When a report is produced it is stored in `*out_report` and the return
// value reflects its claims: `OK`, `CLAIM_FAILED` or `INCONCLUSIVE`.
// Otherwise `*out_report` is set to null.
//
// # Safety
// `ctx` must be a live context, `command` and `params_json` (if not null)
// NUL-terminated strings, and `out_report` writable.
enum TcStatus tc_run(const struct TcContext *ctx,
                     const char *command,
                     const char *params_json,
                     struct TcReport **out_report);

// The report as JSON. Owned by the report; valid until `tc_report_free`.
//
// # Safety
// `report` must be a live report or null.
const char *tc_report_json(const struct TcReport *report);

// Same convention as the command-line tool: 0, 1 (a claim failed) or 3
// (inconclusive). Returns -1 for null.
//
// # Safety
// `report` must be a live report or null.
int32_t tc_report_exit_code(const struct TcReport *report);

// Number of claims in the report, 0 for null.
//
// # Safety
// `report` must be a live report or null.
size_t tc_report_claim_count(const struct TcReport *report);

// # Safety
// `report` must come from `tc_run` and not be freed twice. Null is ignored.
void tc_report_free(struct TcReport *report);

// Lattice points of the fundamental domain at level `k`.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_h_f(int64_t k, int64_t *out);

// Sections of `k D_i` on the toric model, `i` in `0..4`.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_toric_h0(uint32_t i, int64_t k, uint64_t *out);

// Dimension of the invariant theta functions of even degree `k`, from the
// closed formula.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_hilbert(int64_t k, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETA_CRYSTAL_H */
