#ifndef UPPERTAIL_H
#define UPPERTAIL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  UT_STATUS_OK = 0,
  UT_STATUS_NULL_POINTER = 1,
  UT_STATUS_PARSE = 2,
  UT_STATUS_INVALID_INPUT = 3,
  UT_STATUS_LIMIT = 4,
  UT_STATUS_INFEASIBLE = 5,
  UT_STATUS_SEARCH_VOLUME = 6,
  UT_STATUS_INTERNAL = 7,
  UT_STATUS_PANIC = 8,
} UtStatus;

/**
 * Built-in graph families.
 */
typedef enum {
  /**
   * K_a.
   */
  UT_FAMILY_COMPLETE = 0,
  /**
   * C_a.
   */
  UT_FAMILY_CYCLE = 1,
  /**
   * C_a with b pendant edges at one vertex.
   */
  UT_FAMILY_CYCLE_PENDANT = 2,
  UT_FAMILY_SNAIL = 3,
  /**
   * H_a.
   */
  UT_FAMILY_BADNEWS = 4,
  UT_FAMILY_FIG2 = 5,
} UtFamily;

/**
 * An undirected simple graph.
 */
typedef struct UtGraph UtGraph;

/**
 * A rational number in lowest terms with a positive denominator.
 */
typedef struct {
  int64_t num;
  int64_t den;
} UtRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *ut_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void ut_string_free(char *s);

/**
 * Builds a graph on vertices 1..=order from `edge_count` label pairs stored
 * flat in `pairs` (2·edge_count entries).
 *
 * # Safety
 * `pairs` must point to 2·edge_count readable values (or may be null when
 * edge_count is 0); `out` must be writable.
 */
UtStatus ut_graph_from_edges(size_t order, const uint32_t *pairs, size_t edge_count, UtGraph **out);

/**
 * Parses the edge-list text format ("u v" per line, `#` comments).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
UtStatus ut_graph_parse(const char *text, UtGraph **out);

/**
 * Builds a member of a family; `a` and `b` are ignored where unused.
 *
 * # Safety
 * `out` must be writable.
 */
UtStatus ut_graph_family(UtFamily family, size_t a, size_t b, UtGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and must not be used afterwards.
 */
void ut_graph_free(UtGraph *g);

/**
 * Number of vertices, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ut_graph_order(const UtGraph *g);

/**
 * Number of edges, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ut_graph_edge_count(const UtGraph *g);

/**
 * Size of the automorphism group; `Limit` when it exceeds 64 bits.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_graph_automorphisms(const UtGraph *g, uint64_t *out);

/**
 * Number of unlabeled copies of `pattern` in `host`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
UtStatus ut_count_copies(const UtGraph *pattern, const UtGraph *host, uint64_t *out);

/**
 * m(H), the largest e_G / v_G over subgraphs.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_graph_m(const UtGraph *g, UtRational *out);

/**
 * Fractional independence number α*.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_graph_alpha_star(const UtGraph *g, UtRational *out);

/**
 * ζ of the primal family. `defined` is set to false, and `out` left alone,
 * when no primal subgraph has a cover.
 *
 * # Safety
 * `g` must be a live handle; `out` and `defined` must be writable.
 */
UtStatus ut_graph_zeta(const UtGraph *g, UtRational *out, bool *defined);

/**
 * Whether some primal subgraph and covers beat the smallest primal size.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_graph_is_counterexample(const UtGraph *g, bool *out);

/**
 * ln of the expected number of copies in G(n, p).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_mu_ln(const UtGraph *g, uint64_t n, double p, double *out);

/**
 * ln Φ(n, p): the smallest expected count over subgraphs with an edge.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_phi_ln(const UtGraph *g, uint64_t n, double p, double *out);

/**
 * Full analysis as a JSON document, with exponent terms at (n, p, eps)
 * when `n` is positive. Free the result with [`ut_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
UtStatus ut_analyze_json(const UtGraph *g, uint64_t n, double p, double eps, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UPPERTAIL_H */
