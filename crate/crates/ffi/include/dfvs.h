/* Generated by cbindgen from crates/ffi. Do not edit. */

#ifndef DFVS_H
#define DFVS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DfvsStatus {
  DFVS_STATUS_OK = 0,
  DFVS_STATUS_NULL_POINTER = 1,
  DFVS_STATUS_PARSE_ERROR = 2,
  DFVS_STATUS_INVALID_ARGUMENT = 3,
  DFVS_STATUS_TOO_LARGE = 4,
  DFVS_STATUS_BUFFER_TOO_SMALL = 5,
  DFVS_STATUS_PANIC = 6,
} DfvsStatus;

/*
 Opaque cancellation flag, safe to fire from any thread.
 */
typedef struct DfvsCancelToken DfvsCancelToken;

/*
 Opaque parsed instance.
 */
typedef struct DfvsInstance DfvsInstance;

/*
 Opaque solution: ascending 1-based vertex ids.
 */
typedef struct DfvsSolution DfvsSolution;

/*
 Solver settings. `time_limit_secs <= 0` disables the wall-clock limit and
 `max_iterations < 0` disables the iteration cap; with both disabled the
 search runs until its cancellation token fires.
 */
typedef struct DfvsConfig {
  uint64_t seed;
  double time_limit_secs;
  int64_t max_iterations;
  double trigger_fraction;
  double restore_fraction;
  uint32_t degree_bound;
} DfvsConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Static, NUL-terminated description of a status code.
 */
const char *dfvs_status_message(enum DfvsStatus status);

/*
 # Safety
 `out` must be null or point to writable memory for one `DfvsConfig`.
 */
enum DfvsStatus dfvs_config_default(struct DfvsConfig *out);

/*
 Parses PACE-format text of `len` bytes.

 # Safety
 `text` must point to `len` readable bytes; `out` must be writable.
 */
enum DfvsStatus dfvs_instance_parse(const uint8_t *text, size_t len, struct DfvsInstance **out);

/*
 Builds an instance over vertices `1..=n` from `m` arcs `tails[i] -> heads[i]`.

 # Safety
 `tails` and `heads` must each point to `m` readable `uint32_t` values
 (either may be null when `m == 0`); `out` must be writable.
 */
enum DfvsStatus dfvs_instance_from_arcs(uint32_t n,
                                        const uint32_t *tails,
                                        const uint32_t *heads,
                                        size_t m,
                                        struct DfvsInstance **out);

/*
 # Safety
 `inst` must be null or a handle from this library not yet freed.
 */
void dfvs_instance_free(struct DfvsInstance *inst);

/*
 Number of vertices, 0 for a null handle.

 # Safety
 `inst` must be null or a live handle.
 */
size_t dfvs_instance_vertex_count(const struct DfvsInstance *inst);

/*
 Number of distinct arcs, 0 for a null handle.

 # Safety
 `inst` must be null or a live handle.
 */
size_t dfvs_instance_edge_count(const struct DfvsInstance *inst);

struct DfvsCancelToken *dfvs_cancel_token_new(void);

/*
 Asks every solve using this token to stop and return its best solution.

 # Safety
 `token` must be null or a live handle.
 */
void dfvs_cancel_token_cancel(const struct DfvsCancelToken *token);

/*
 # Safety
 `token` must be null or a handle not yet freed, and no solve may still be
 running with it.
 */
void dfvs_cancel_token_free(struct DfvsCancelToken *token);

/*
 Runs the heuristic solver. `config` and `token` may be null (defaults, no
 cancellation).

 # Safety
 `inst` must be a live instance handle, `config` and `token` null or valid,
 and `out` writable.
 */
enum DfvsStatus dfvs_solve(const struct DfvsInstance *inst,
                           const struct DfvsConfig *config,
                           const struct DfvsCancelToken *token,
                           struct DfvsSolution **out);

/*
 Exhaustive minimum solution; refuses instances above 20 vertices.

 # Safety
 `inst` must be a live handle and `out` writable.
 */
enum DfvsStatus dfvs_exact_min(const struct DfvsInstance *inst, struct DfvsSolution **out);

/*
 Whether removing the `len` given vertices leaves the instance acyclic.

 # Safety
 `inst` must be a live handle, `ids` must point to `len` readable values
 (may be null when `len == 0`), and `valid` must be writable.
 */
enum DfvsStatus dfvs_is_valid(const struct DfvsInstance *inst,
                              const uint32_t *ids,
                              size_t len,
                              bool *valid);

/*
 # Safety
 `sol` must be null or a live handle.
 */
size_t dfvs_solution_len(const struct DfvsSolution *sol);

/*
 Copies the ascending vertex ids into `buf`, which holds `cap` values.

 # Safety
 `sol` must be a live handle and `buf` must point to `cap` writable values
 (may be null when the solution is empty).
 */
enum DfvsStatus dfvs_solution_copy(const struct DfvsSolution *sol, uint32_t *buf, size_t cap);

/*
 # Safety
 `sol` must be null or a handle not yet freed.
 */
void dfvs_solution_free(struct DfvsSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DFVS_H */
