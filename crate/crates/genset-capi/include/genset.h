/* C ABI for the genset library. Handles are opaque; every fallible call returns a GensetStatus and writes results through out-pointers. */

#ifndef GENSET_H
#define GENSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum GensetStatus {
  GENSET_STATUS_OK = 0,
  GENSET_STATUS_INVALID_ARGUMENT = 1,
  GENSET_STATUS_CAPACITY = 2,
  GENSET_STATUS_PARSE_ERROR = 3,
  GENSET_STATUS_EMPTY_DOMAIN = 4,
  GENSET_STATUS_NO_GOOD_CLIQUE = 5,
  GENSET_STATUS_IO_ERROR = 6,
  GENSET_STATUS_NULL_POINTER = 7,
} GensetStatus;

/**
 * Opaque set-family handle.
 */
typedef struct GensetFamily GensetFamily;

/**
 * Opaque graph handle.
 */
typedef struct GensetGraph GensetGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *genset_version(void);

/**
 * Frees a string allocated by this library.
 */
void genset_string_free(char *s);

/**
 * Builds the canonical k-generator of [n] (power sets of a balanced
 * partition, minus the empty set).
 */
enum GensetStatus genset_canonical_family(uint32_t n, uint32_t k, struct GensetFamily **out);

/**
 * Parses the family text format (`n=<int>` header, one member per line).
 */
enum GensetStatus genset_family_parse(const char *text, struct GensetFamily **out);

/**
 * Reads a family file in the text format.
 */
enum GensetStatus genset_family_from_file(const char *path, struct GensetFamily **out);

void genset_family_free(struct GensetFamily *f);

/**
 * Number of members; 0 for NULL.
 */
uint64_t genset_family_len(const struct GensetFamily *f);

/**
 * Ground-set size; 0 for NULL.
 */
uint32_t genset_family_ground_n(const struct GensetFamily *f);

/**
 * Serializes the family to its text format; free with genset_string_free.
 */
enum GensetStatus genset_family_to_text(const struct GensetFamily *f, char **out);

/**
 * True iff every subset of the ground set is a disjoint union of at most
 * k members.
 */
enum GensetStatus genset_family_is_k_generator(const struct GensetFamily *f, uint32_t k, bool *out);

/**
 * Same with overlapping unions allowed.
 */
enum GensetStatus genset_family_is_k_base(const struct GensetFamily *f, uint32_t k, bool *out);

/**
 * The size (k+r)·2^q − k of the canonical k-generator, n = qk + r.
 */
enum GensetStatus genset_canonical_size(uint32_t n, uint32_t k, uint64_t *out);

/**
 * Smallest m with sum_{i<=k} C(m,i) >= 2^n.
 */
enum GensetStatus genset_counting_lower_bound(uint32_t n, uint32_t k, uint64_t *out);

/**
 * The closed-form c0·k·2^{n/k} upper bound for the canonical size.
 */
enum GensetStatus genset_crude_upper_bound(uint32_t n, uint32_t k, double *out);

/**
 * Disjointness graph of the family: members are vertices in sorted order,
 * joined when their masks are disjoint.
 */
enum GensetStatus genset_disjointness_graph(const struct GensetFamily *f, struct GensetGraph **out);

void genset_graph_free(struct GensetGraph *g);

uint64_t genset_graph_order(const struct GensetGraph *g);

uint64_t genset_graph_edge_count(const struct GensetGraph *g);

/**
 * Exact number of r-cliques; Capacity if the count overflows u64.
 */
enum GensetStatus genset_graph_clique_count(const struct GensetGraph *g, uint32_t r, uint64_t *out);

/**
 * Exact chromatic number (order <= 30).
 */
enum GensetStatus genset_graph_chromatic_number(const struct GensetGraph *g, uint32_t *out);

/**
 * Edges to delete to make the graph bipartite (order <= 24).
 */
enum GensetStatus genset_graph_bipartization_distance(const struct GensetGraph *g, uint64_t *out);

/**
 * Minimum intra-class edges over k-partitions (order <= 16 for k >= 3).
 */
enum GensetStatus genset_graph_kpartization_distance(const struct GensetGraph *g,
                                                     uint32_t k,
                                                     uint64_t *out);

/**
 * Exact minimum k-generator (or k-base with `base` set) size. `max_nodes`
 * of 0 means unlimited; `out_complete` reports whether the search finished
 * (when false, `out_min` is the best upper bound found).
 */
enum GensetStatus genset_min_generator_size(uint32_t n,
                                            uint32_t k,
                                            bool base,
                                            uint64_t max_nodes,
                                            uint64_t *out_min,
                                            bool *out_complete);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENSET_H */
