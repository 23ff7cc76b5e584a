#ifndef CAYLEY_EMBED_H
#define CAYLEY_EMBED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  CE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CE_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not UTF-8.
   */
  CE_STATUS_INVALID_UTF8 = 2,
  /**
   * A square, group table or group spec failed to parse or validate.
   */
  CE_STATUS_PARSE_ERROR = 3,
  /**
   * Arguments are well formed but out of range for the operation.
   */
  CE_STATUS_INVALID_ARGUMENT = 4,
  /**
   * No complete group class is known for the requested order.
   */
  CE_STATUS_INCOMPLETE_CLASS = 5,
  /**
   * An internal error; the library caught a panic.
   */
  CE_STATUS_INTERNAL = 6,
} CeStatus;

typedef enum {
  CE_VARIANT_GROUP = 0,
  CE_VARIANT_ABELIAN = 1,
  CE_VARIANT_CYCLIC = 2,
} CeVariant;

/**
 * A finite group.
 */
typedef struct CeGroup CeGroup;

/**
 * A partial latin square.
 */
typedef struct CePls CePls;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or `""`. Valid until
 * the next call into the library on the same thread.
 */
const char *ce_last_error(void);

/**
 * The library version as a static string.
 */
const char *ce_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ce_string_free(char *s);

/**
 * Parses a square in triple-list (`r c s`, 1-based) or grid format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
CeStatus ce_pls_parse(const char *text, CePls **out);

/**
 * # Safety
 * `p` must come from `ce_pls_parse` and not have been freed. Null is ignored.
 */
void ce_pls_free(CePls *p);

/**
 * Number of filled cells, or 0 for null.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
size_t ce_pls_size(const CePls *p);

/**
 * The species key as a hex string.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
CeStatus ce_pls_species_key(const CePls *p, char **out);

/**
 * Builds a group from a spec string such as `cyclic:12` or `dihedral:3`.
 *
 * # Safety
 * `spec` must be a nul-terminated string; `out` must be writable.
 */
CeStatus ce_group_from_spec(const char *spec, CeGroup **out);

/**
 * Builds a group from an `n x n` row-major Cayley table with entries in
 * `0..n`.
 *
 * # Safety
 * `table` must point to `n * n` readable values; `out` must be writable.
 */
CeStatus ce_group_from_table(size_t n, const uint32_t *table, CeGroup **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void ce_group_free(CeGroup *g);

/**
 * Group order, or 0 for null.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t ce_group_order(const CeGroup *g);

/**
 * Decides whether `p` embeds in `g`. When `verdict_json` is non-null it
 * receives the verdict as JSON, with the witness or the obstruction.
 *
 * # Safety
 * Handles must be live; `embeddable` must be writable; `verdict_json` may be
 * null.
 */
CeStatus ce_embed(const CePls *p, const CeGroup *g, bool *embeddable, char **verdict_json);

/**
 * The exact number of embeddings of `p` in `g`.
 *
 * # Safety
 * Handles must be live; `count` must be writable.
 */
CeStatus ce_count_embeddings(const CePls *p, const CeGroup *g, uint64_t *count);

/**
 * Searches for a permutation `pi` of `g` whose products `x pi(x)` take the
 * multiplicities `parts[0..n_parts]`. On success `found` is set and, if
 * found, `pi_out` (room for `|g|` entries, may be null) receives `pi`.
 *
 * # Safety
 * `g` must be live; `parts` must hold `n_parts` values; `found` must be
 * writable; `pi_out` must be null or hold `|g|` writable values.
 */
CeStatus ce_diagonal_partition(const CeGroup *g,
                               const size_t *parts,
                               size_t n_parts,
                               bool *found,
                               size_t *pi_out);

/**
 * `psi(n)` for the built-in class. `result_json` may be null; otherwise it
 * receives the full result with obstacles and statistics.
 *
 * # Safety
 * `psi_out` must be writable; `result_json` must be null or writable.
 */
CeStatus ce_psi(size_t n, CeVariant variant, size_t *psi_out, char **result_json);

/**
 * `psi(n)` over caller-supplied groups, asserted to be the complete class.
 *
 * # Safety
 * `groups` must hold `n_groups` live handles; `psi_out` must be writable;
 * `result_json` must be null or writable.
 */
CeStatus ce_psi_with_groups(size_t n,
                            CeVariant variant,
                            const CeGroup *const *groups,
                            size_t n_groups,
                            size_t *psi_out,
                            char **result_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAYLEY_EMBED_H */
