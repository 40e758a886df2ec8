/* C interface to the RANS library. Every object is an opaque handle owned by
 * the caller and released with the matching *_free function. Functions return
 * a rans_status; on failure rans_last_error() describes the problem (the text
 * is thread-local and valid until the next failing call on that thread).
 * Strings returned through char** are released with rans_string_free. */
#ifndef RANS_RANS_H
#define RANS_RANS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RANS_API __declspec(dllexport)
#else
#define RANS_API __attribute__((visibility("default")))
#endif

typedef enum rans_status {
  RANS_OK = 0,
  RANS_E_INVALID_ARGUMENT = 1,
  RANS_E_PARSE = 2,
  RANS_E_CAP_EXCEEDED = 3,
  RANS_E_OUT_OF_RANGE = 4,
  RANS_E_IO = 5,
  RANS_E_VERIFICATION = 6,
  RANS_E_INSUFFICIENT_DATA = 7,
  RANS_E_ABSENT = 8, /* e.g. the center of the empty structure */
  RANS_E_INTERNAL = 99
} rans_status;

typedef enum rans_strategy { RANS_STRATEGY_CYCLE_LEMMA = 0, RANS_STRATEGY_RECURSIVE_SPLITTING = 1 } rans_strategy;

typedef enum rans_format { RANS_FORMAT_TEXT = 0, RANS_FORMAT_CSV = 1, RANS_FORMAT_JSON = 2 } rans_format;

typedef struct rans_tree rans_tree;
typedef struct rans_graph rans_graph;
typedef struct rans_series rans_series;
typedef struct rans_report rans_report;

RANS_API const char* rans_last_error(void);
RANS_API const char* rans_status_name(rans_status status);
RANS_API void rans_string_free(char* s);

/* Seed of stream `index` under `base` (SplitMix64-based derivation). */
RANS_API uint64_t rans_derive_seed(uint64_t base, uint64_t index);
/* Seed used for sample `index` at order `order` of a run seeded with `run_seed`. */
RANS_API uint64_t rans_sample_seed(uint64_t run_seed, size_t order, size_t index);

/* ---- ternary trees ---- */
/* T_n as a decimal string. */
RANS_API rans_status rans_count_trees(size_t n, char** out_decimal);
RANS_API rans_status rans_tree_decode(const char* word, rans_tree** out);
RANS_API rans_status rans_tree_sample(size_t n, uint64_t seed, rans_strategy strategy, rans_tree** out);
/* Tree number `index` (0-based) in enumeration order of order n; n <= cap. */
RANS_API rans_status rans_tree_enumerated(size_t n, size_t index, size_t cap, rans_tree** out);
RANS_API rans_status rans_tree_encode(const rans_tree* tree, char** out_word);
RANS_API size_t rans_tree_order(const rans_tree* tree);
RANS_API void rans_tree_free(rans_tree* tree);

/* ---- graphs ---- */
typedef struct rans_census {
  uint64_t pair_count;
  uint64_t intra_pairs;
  uint64_t inter_pairs;
  uint64_t intra_total;
  uint64_t inter_total;
  uint64_t inter_lower_bound;
  uint64_t fedge_count;
  uint64_t grand_total;
  uint64_t shortcut_pairs;
  uint64_t decomposition_defect;
} rans_census;

RANS_API rans_status rans_graph_build(const rans_tree* tree, rans_graph** out);
RANS_API void rans_graph_free(rans_graph* graph);
RANS_API size_t rans_graph_order(const rans_graph* graph);
RANS_API size_t rans_graph_vertex_count(const rans_graph* graph);
RANS_API size_t rans_graph_edge_count(const rans_graph* graph);
/* {order, edges, outermost, center} */
RANS_API rans_status rans_graph_to_json(const rans_graph* graph, char** out_json);
/* out must hold rans_graph_vertex_count() entries. */
RANS_API rans_status rans_graph_bfs(const rans_graph* graph, uint32_t source, uint32_t* out, size_t out_len);
/* counts[i] = internal vertices other than the source at distance i. Writes
 * min(len, capacity) entries and stores the full length in *out_len. */
RANS_API rans_status rans_graph_distance_profile(const rans_graph* graph, uint32_t source, uint64_t* counts,
                                                 size_t capacity, size_t* out_len);
/* variant 1, 2 or 3: labels seeded (0,1,1), (0,0,1), (0,0,0). */
RANS_API rans_status rans_graph_delta_sum(const rans_graph* graph, int variant, uint64_t* out);
/* RANS_E_ABSENT for the empty structure. */
RANS_API rans_status rans_graph_center_degree(const rans_graph* graph, size_t* out);
RANS_API rans_status rans_graph_equidistant_count(const rans_graph* graph, uint64_t* out);
RANS_API rans_status rans_graph_census(const rans_graph* graph, rans_census* out);
RANS_API rans_status rans_graph_mean_pairwise_distance(const rans_graph* graph, double* out);

/* ---- series ----
 * Univariate names: T, Tprime, H, D<i>, Dtotal, Delta<i> (both derivations,
 * checked against each other), Delta<i>:system, Delta<i>:closed,
 * Delta<i>:printed, delta, delta~, Intra, Intra~, gamma-, gamma+, Inter-,
 * Inter+, E, E:<reading>, phi, F, G. */
RANS_API rans_status rans_series_build(const char* name, size_t trunc, rans_series** out);
RANS_API size_t rans_series_precision(const rans_series* series);
/* Exact coefficient as "p" or "p/q". */
RANS_API rans_status rans_series_coeff(const rans_series* series, size_t n, char** out);
RANS_API rans_status rans_series_to_csv(const rans_series* series, char** out);
RANS_API void rans_series_free(rans_series* series);
/* Marked names: Tzu, Dg, T1, T2, T3, Dtop. Lines "n; k1,k2,..; value". */
RANS_API rans_status rans_marked_series_text(const char* name, size_t trunc, char** out);

/* ---- reports ---- */
RANS_API rans_status rans_verify_run(size_t max_order, size_t cap, const char* corrupt, rans_report** out);

typedef struct rans_asympt_config {
  size_t trunc;
  const size_t* orders; /* Monte Carlo orders */
  size_t order_count;
  size_t samples;
  uint64_t seed;
  size_t tail_order;
  size_t tail_graph_order;
  size_t tail_graphs;
  double pole_eps;
  int exact_only;
  const char* tolerances; /* "KEY=VAL,KEY=VAL" overrides, may be NULL */
} rans_asympt_config;

/* Defaults: trunc 500, orders {1000,4000,10000}, samples 30, seed 1, ... */
RANS_API void rans_asympt_config_default(rans_asympt_config* config);
RANS_API rans_status rans_asympt_run(const rans_asympt_config* config, rans_report** out);

RANS_API int rans_report_passed(const rans_report* report);
RANS_API rans_status rans_report_render(const rans_report* report, rans_format format, char** out);
RANS_API void rans_report_free(rans_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RANS_RANS_H */
