#ifndef GBWISH_H
#define GBWISH_H

#include <stdint.h>

#if defined(_WIN32)
#define GBW_API __declspec(dllexport)
#else
#define GBW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbw_status {
  GBW_OK = 0,
  GBW_INFEASIBLE = 1,
  GBW_PARSE_ERROR = 2,
  GBW_LIMIT = 3,
  GBW_INVALID_ARGUMENT = 4,
  GBW_NUMERICAL = 5,
  GBW_IO_ERROR = 6,
  GBW_INTERNAL = 7
} gbw_status;

#define GBW_SCHEMA_VERSION 1

typedef struct gbw_graph gbw_graph;   /* graph plus a vertex ordering */
typedef struct gbw_matrix gbw_matrix; /* dense row-major doubles */
typedef struct gbw_model gbw_model;   /* graph, ordering, U, delta */
typedef struct gbw_chain gbw_chain;   /* retained draws of one or more chains */

/* Message of the last failed call on this thread; empty after success. */
GBW_API const char* gbw_last_error(void);
GBW_API const char* gbw_version(void);
/* Strings returned through char** out-parameters are released here. */
GBW_API void gbw_string_free(char* s);

/* Graphs. Vertices are 0-based here; files use 1-based labels. */
GBW_API gbw_status gbw_graph_read(const char* path, gbw_graph** out);
GBW_API gbw_status gbw_graph_from_graph6(const char* record, gbw_graph** out);
/* edges holds m pairs (u, v). */
GBW_API gbw_status gbw_graph_from_edges(int p, const int* edges, int m, gbw_graph** out);
GBW_API gbw_status gbw_graph_copy(const gbw_graph* g, gbw_graph** out);
GBW_API void gbw_graph_free(gbw_graph* g);
GBW_API int gbw_graph_order(const gbw_graph* g);
GBW_API int gbw_graph_edge_count(const gbw_graph* g);
/* Writes m pairs into edges (capacity 2 * gbw_graph_edge_count). */
GBW_API gbw_status gbw_graph_edges(const gbw_graph* g, int* edges);
/* path "-" writes to stdout. */
GBW_API gbw_status gbw_graph_write(const gbw_graph* g, const char* path);

/* spec: a file of 1-based ranks, "natural", "min-fill", "peo" or "gb-search". */
GBW_API gbw_status gbw_graph_set_ordering(gbw_graph* g, const char* spec);
/* ranks[v] = position of vertex v, 0-based. */
GBW_API gbw_status gbw_graph_ordering(const gbw_graph* g, int* ranks);
GBW_API gbw_status gbw_graph_write_ordering(const gbw_graph* g, const char* path);

/* JSON: decomposable, gb, exhaustive, ordering, violations of the current ordering. */
GBW_API gbw_status gbw_graph_check(const gbw_graph* g, char** json);
/* Fill cover of the current ordering, original labels. */
GBW_API gbw_status gbw_graph_triangulate(const gbw_graph* g, gbw_graph** out, int* fill_edges);
/* GB cover of the current ordering, original labels; the ordering carries over. */
GBW_API gbw_status gbw_graph_cover(const gbw_graph* g, gbw_graph** out, int* added_edges);
/* JSON array of vertex sets (1-based). */
GBW_API gbw_status gbw_graph_prime_components(const gbw_graph* g, char** json);
/* CSV: order,total,decomposable,gb,decomposable_pct,gb_pct. graph6_path may be NULL. */
GBW_API gbw_status gbw_census(int max_order, const char* graph6_path, char** csv);

/* Matrices. */
GBW_API gbw_status gbw_matrix_new(int rows, int cols, const double* data, gbw_matrix** out);
GBW_API gbw_status gbw_matrix_read(const char* path, gbw_matrix** out);
/* Square and symmetric within 1e-12, symmetrized on load. */
GBW_API gbw_status gbw_matrix_read_symmetric(const char* path, gbw_matrix** out);
GBW_API gbw_status gbw_matrix_write(const gbw_matrix* m, const char* path);
GBW_API void gbw_matrix_free(gbw_matrix* m);
GBW_API int gbw_matrix_rows(const gbw_matrix* m);
GBW_API int gbw_matrix_cols(const gbw_matrix* m);
GBW_API double gbw_matrix_get(const gbw_matrix* m, int i, int j);
/* S = X^T X / n for an n x p data matrix. */
GBW_API gbw_status gbw_matrix_cross_product(const gbw_matrix* x, gbw_matrix** s);

/* Shape vectors. rule: "const:<x>", "empirical", "inv-diag", "prec-diag" or a CSV path
   (one value per vertex). U, S may be NULL when the rule does not need them. */
GBW_API gbw_status gbw_delta_rule(const char* rule, int p, const gbw_matrix* U, const gbw_matrix* S, double n,
                                  double* delta);

/* Models. U defaults to the identity when NULL. The graph and its ordering are copied. */
GBW_API gbw_status gbw_model_new(const gbw_graph* g, const gbw_matrix* U, const double* delta, gbw_model** out);
GBW_API gbw_status gbw_model_posterior(const gbw_model* prior, const gbw_matrix* S, double n, gbw_model** out);
GBW_API void gbw_model_free(gbw_model* m);

typedef struct gbw_sample_config {
  long iters;        /* total sweeps, burn-in included */
  long burnin;
  long thin;
  uint64_t seed;
  int chains;        /* chains c use stream c */
  int threads;       /* 0: hardware concurrency */
  long max_attempts; /* accept-reject budget */
  double df_offset;  /* accept-reject / MH proposal offset on the chi-square degrees of freedom */
  int keep_factors;
  int track_sigma;
} gbw_sample_config;

GBW_API void gbw_sample_config_default(gbw_sample_config* cfg);

/* sampler: "gibbs", "direct", "ar" or "mh". Independent samplers keep
   (iters - burnin) / thin draws. An exhausted accept-reject budget returns
   GBW_LIMIT and still hands back the partial chain. */
GBW_API gbw_status gbw_sample(const gbw_model* m, const char* sampler, const gbw_sample_config* cfg,
                              gbw_chain** out);
GBW_API void gbw_chain_free(gbw_chain* c);
GBW_API long gbw_chain_retained(const gbw_chain* c);
GBW_API double gbw_chain_acceptance(const gbw_chain* c);
/* Header: iter, then w_i_j for each diagonal/edge entry (1-based, i <= j). */
GBW_API gbw_status gbw_chain_write_csv(const gbw_chain* c, const char* path);
GBW_API gbw_status gbw_chain_mean(const gbw_chain* c, gbw_matrix** out);
/* Schema-versioned summary; config_json (may be NULL) is embedded verbatim as "config". */
GBW_API gbw_status gbw_chain_summary(const gbw_chain* c, double level, const char* config_json, char** json);

/* Identity diagnostic; the chain must have kept its factors. JSON rows i, j, simulated, truth, se. */
GBW_API gbw_status gbw_identity_diagnostic(const gbw_chain* c, const gbw_model* m, char** json);
GBW_API gbw_status gbw_dic(const gbw_chain* c, const gbw_matrix* S, double n, double* out);
GBW_API gbw_status gbw_stein_loss(const gbw_matrix* estimate, const gbw_matrix* truth, double* out);

#ifdef __cplusplus
}
#endif

#endif
