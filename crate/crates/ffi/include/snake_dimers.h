#ifndef SNAKE_DIMERS_H
#define SNAKE_DIMERS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SdMethod {
  SD_METHOD_AUTO = 0,
  SD_METHOD_BRUTE = 1,
  SD_METHOD_MATRIX = 2,
} SdMethod;

typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_NULL_ARGUMENT = 1,
  SD_STATUS_INVALID_UTF8 = 2,
  SD_STATUS_INVALID_WORD = 3,
  SD_STATUS_INVALID_LABELING = 4,
  SD_STATUS_DIMENSION = 5,
  SD_STATUS_GUARD_EXCEEDED = 6,
  SD_STATUS_UNSUPPORTED = 7,
  SD_STATUS_INVALID_PERMUTATION = 8,
  SD_STATUS_INVALID_COVER = 9,
  SD_STATUS_PARSE = 10,
  SD_STATUS_OVERFLOW = 11,
  SD_STATUS_INTERNAL = 12,
} SdStatus;

/**
 * The face-twist lattice of a labeled snake graph.
 */
typedef struct SdLattice SdLattice;

/**
 * A perfectly oriented bipartite graph with one source and one sink.
 */
typedef struct SdMatchingGraph SdMatchingGraph;

/**
 * A snake graph together with a vertex labeling.
 */
typedef struct SdSnake SdSnake;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *sd_last_error(void);

/**
 * Library version as a static string.
 */
const char *sd_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sd_string_free(char *s);

/**
 * Builds the snake graph of `word` with its standard labeling.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` valid for writes.
 */
enum SdStatus sd_snake_new(const char *word, struct SdSnake **out);

/**
 * # Safety
 * `snake` must be null or a handle from [`sd_snake_new`], not yet freed.
 */
void sd_snake_free(struct SdSnake *snake);

/**
 * Replaces the labeling: `standard`, `const:K`, or a comma list with one
 * entry per canonical-cover edge or one per vertex.
 *
 * # Safety
 * `snake` must be a live handle and `labels` a NUL-terminated string.
 */
enum SdStatus sd_snake_set_labels(struct SdSnake *snake, const char *labels);

/**
 * Number of tiles, or 0 for a null handle.
 *
 * # Safety
 * `snake` must be null or a live handle.
 */
size_t sd_snake_tile_count(const struct SdSnake *snake);

/**
 * Counts mixed dimer covers, refusing exhaustive searches larger than `guard`.
 * Fails with `Overflow` when the count does not fit in 64 bits.
 *
 * # Safety
 * `snake` must be a live handle and `out` valid for writes.
 */
enum SdStatus sd_snake_count_covers(const struct SdSnake *snake,
                                    enum SdMethod method,
                                    uint64_t guard,
                                    uint64_t *out);

/**
 * Like [`sd_snake_count_covers`] but returns the count as a decimal string.
 *
 * # Safety
 * `snake` must be a live handle and `out` valid for writes; free the result
 * with [`sd_string_free`].
 */
enum SdStatus sd_snake_count_covers_decimal(const struct SdSnake *snake,
                                            enum SdMethod method,
                                            uint64_t guard,
                                            char **out);

/**
 * The dual word as a new string.
 *
 * # Safety
 * `snake` must be a live handle and `out` valid for writes; free the result
 * with [`sd_string_free`].
 */
enum SdStatus sd_snake_dual_word(const struct SdSnake *snake, char **out);

/**
 * Builds the face-twist lattice of the snake under its current labeling.
 *
 * # Safety
 * `snake` must be a live handle and `out` valid for writes.
 */
enum SdStatus sd_lattice_new(const struct SdSnake *snake, uint64_t guard, struct SdLattice **out);

/**
 * # Safety
 * `lattice` must be null or a handle from [`sd_lattice_new`], not yet freed.
 */
void sd_lattice_free(struct SdLattice *lattice);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `lattice` must be null or a live handle.
 */
size_t sd_lattice_len(const struct SdLattice *lattice);

/**
 * Length of the longest chain.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes.
 */
enum SdStatus sd_lattice_height(const struct SdLattice *lattice, size_t *out);

/**
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes.
 */
enum SdStatus sd_lattice_is_distributive(const struct SdLattice *lattice, bool *out);

/**
 * Rank generating polynomial in `q`, as text.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes; free the
 * result with [`sd_string_free`].
 */
enum SdStatus sd_lattice_rank_polynomial(const struct SdLattice *lattice, char **out);

/**
 * Hasse diagram in Graphviz DOT.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes; free the
 * result with [`sd_string_free`].
 */
enum SdStatus sd_lattice_to_dot(const struct SdLattice *lattice, char **out);

/**
 * Matching graph whose perfect matchings number the Euler number `E_n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SdStatus sd_matching_graph_euler(size_t n, struct SdMatchingGraph **out);

/**
 * Matching graph whose perfect matchings number the Catalan number `C_n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SdStatus sd_matching_graph_catalan(size_t n, struct SdMatchingGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from a `sd_matching_graph_*` constructor.
 */
void sd_matching_graph_free(struct SdMatchingGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sd_matching_graph_vertex_count(const struct SdMatchingGraph *g);

/**
 * Number of perfect matchings as a decimal string.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes; free the result
 * with [`sd_string_free`].
 */
enum SdStatus sd_matching_graph_count(const struct SdMatchingGraph *g, char **out);

/**
 * Graphviz DOT with the bipartition as fill colors.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes; free the result
 * with [`sd_string_free`].
 */
enum SdStatus sd_matching_graph_to_dot(const struct SdMatchingGraph *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SNAKE_DIMERS_H */
