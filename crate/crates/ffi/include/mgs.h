#ifndef MGS_H
#define MGS_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgsStatus {
  MGS_STATUS_OK = 0,
  MGS_STATUS_NULL_POINTER = 1,
  MGS_STATUS_INVALID_ARGUMENT = 2,
  MGS_STATUS_PARSE = 3,
  MGS_STATUS_INVARIANT = 4,
  MGS_STATUS_FROZEN_MUTATION = 5,
  MGS_STATUS_OVERFLOW = 6,
  MGS_STATUS_UNDEFINED_COLOR = 7,
  MGS_STATUS_UTF8 = 8,
  MGS_STATUS_PANIC = 9,
} MgsStatus;

/**
 * Opaque quiver handle.
 */
typedef struct MgsQuiver MgsQuiver;

typedef struct MgsReport {
  bool is_green;
  bool is_maximal;
  /**
   * 1-based failing step, 0 when every step was green.
   */
  size_t failure_index;
} MgsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. Owned by the
 * library.
 */
const char *mgs_last_error_message(void);

/**
 * The framed torus quiver of genus `n` (n >= 3).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MgsStatus mgs_torus_new(size_t n, struct MgsQuiver **out);

/**
 * The framed oriented `n`-cycle.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MgsStatus mgs_cycle_new(size_t n, struct MgsQuiver **out);

/**
 * Parses a JSON quiver document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_from_json(const char *json, struct MgsQuiver **out);

/**
 * # Safety
 * `q` must be a handle from this library (or NULL) and not used afterwards.
 */
void mgs_quiver_free(struct MgsQuiver *q);

/**
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_clone(const struct MgsQuiver *q, struct MgsQuiver **out);

/**
 * # Safety
 * `q` must be a valid handle.
 */
size_t mgs_quiver_n_mutable(const struct MgsQuiver *q);

/**
 * # Safety
 * `q` must be a valid handle.
 */
size_t mgs_quiver_n_frozen(const struct MgsQuiver *q);

/**
 * Exchange matrix entry: arrows `i -> j` minus arrows `j -> i`.
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_entry(const struct MgsQuiver *q, size_t i, size_t j, int32_t *out);

/**
 * Index of a vertex label, for quivers that carry labels.
 *
 * # Safety
 * `q` must be a valid handle, `label` NUL-terminated, `out` valid.
 */
enum MgsStatus mgs_quiver_vertex_index(const struct MgsQuiver *q, const char *label, size_t *out);

/**
 * Mutates the quiver in place at mutable vertex `k`. On failure the quiver
 * is unchanged.
 *
 * # Safety
 * `q` must be a valid handle.
 */
enum MgsStatus mgs_quiver_mutate(struct MgsQuiver *q, size_t k);

/**
 * Colors of the mutable vertices as a string of `G`/`R`.
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_colors(const struct MgsQuiver *q, char **out);

/**
 * The quiver as a JSON document (with labels when present).
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_to_json(const struct MgsQuiver *q, char **out);

/**
 * The quiver in Graphviz dot syntax.
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum MgsStatus mgs_quiver_to_dot(const struct MgsQuiver *q, char **out);

/**
 * Checks whether `steps[0..len]` is a maximal green sequence for `q`.
 *
 * # Safety
 * `q` must be a valid handle, `steps` must point to `len` values (or be
 * NULL with `len == 0`), `out` must be valid.
 */
enum MgsStatus mgs_check_sequence(const struct MgsQuiver *q,
                                  const size_t *steps,
                                  size_t len,
                                  struct MgsReport *out);

/**
 * The maximal green sequence of length `24n - 4` for the torus quiver of
 * genus `n`, as vertex indices.
 *
 * # Safety
 * `out` and `out_len` must be valid pointers.
 */
enum MgsStatus mgs_theorem_sequence(size_t n, size_t **out, size_t *out_len);

/**
 * The cycle sequence `f_n, ..., f_1, f_3, ..., f_n` for the torus of
 * genus `n` (torus vertex indices).
 *
 * # Safety
 * `out` and `out_len` must be valid pointers.
 */
enum MgsStatus mgs_cycle_sequence(size_t n, size_t **out, size_t *out_len);

/**
 * # Safety
 * `steps`/`len` must come from one call of this library, or be NULL.
 */
void mgs_steps_free(size_t *steps, size_t len);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void mgs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGS_H */
