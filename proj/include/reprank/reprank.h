/*
Copyright 2026 The reprank Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/*
 * C interface to reprank. All objects are opaque handles owned by the caller
 * and released with the matching *_free function. Every fallible call returns
 * a reprank_status; on failure reprank_last_error() describes the cause for
 * the calling thread. Strings returned through char** are heap-allocated and
 * released with reprank_string_free().
 */

#ifndef REPRANK_REPRANK_H
#define REPRANK_REPRANK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef REPRANK_BUILDING
#    define REPRANK_API __declspec(dllexport)
#  else
#    define REPRANK_API __declspec(dllimport)
#  endif
#else
#  define REPRANK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reprank_status {
  REPRANK_OK = 0,
  REPRANK_E_INVALID_ARGUMENT = 1, /* bad parameter or precondition */
  REPRANK_E_PARSE = 2,            /* malformed input text */
  REPRANK_E_IO = 3,               /* file could not be opened or read */
  REPRANK_E_DATA = 4,             /* well-formed input violating an invariant */
  REPRANK_E_INTERNAL = 5
} reprank_status;

typedef enum reprank_format {
  REPRANK_FORMAT_CSV = 0,      /* user_id,item_id,rating */
  REPRANK_FORMAT_MOVIELENS = 1 /* UserID::MovieID::Rating::Timestamp */
} reprank_format;

typedef enum reprank_algorithm {
  REPRANK_ALGO_MEAN = 0,
  REPRANK_ALGO_IR = 1,
  REPRANK_ALGO_CR = 2,
  REPRANK_ALGO_RR = 3
} reprank_algorithm;

typedef enum reprank_metric {
  REPRANK_METRIC_RS = 0,
  REPRANK_METRIC_CORRELATION = 1
} reprank_metric;

typedef struct reprank_graph reprank_graph;
typedef struct reprank_benchmark reprank_benchmark;
typedef struct reprank_result reprank_result;
typedef struct reprank_truth reprank_truth;
typedef struct reprank_sweep reprank_sweep;

REPRANK_API const char* reprank_version(void);
REPRANK_API const char* reprank_last_error(void);
REPRANK_API void reprank_string_free(char* s);

/* ---- graph ------------------------------------------------------------ */

typedef struct reprank_graph_stats {
  size_t num_users;
  size_t num_items;
  size_t num_links;
  double mean_user_degree;
  double mean_item_degree;
  double sparsity;
} reprank_graph_stats;

REPRANK_API reprank_status reprank_format_parse(const char* name, reprank_format* out);
REPRANK_API reprank_status reprank_graph_read_file(const char* path, reprank_format format, reprank_graph** out);
REPRANK_API reprank_status reprank_graph_read_buffer(const char* data, size_t size, reprank_format format,
                                                     reprank_graph** out);
/* Generic CSV with header, full-precision ratings. */
REPRANK_API reprank_status reprank_graph_write_csv(const reprank_graph* graph, char** out);
REPRANK_API reprank_status reprank_graph_stats_get(const reprank_graph* graph, reprank_graph_stats* out);
/* NULL when the index is out of range. */
REPRANK_API const char* reprank_graph_user_id(const reprank_graph* graph, size_t user);
REPRANK_API const char* reprank_graph_item_id(const reprank_graph* graph, size_t item);
REPRANK_API reprank_status reprank_graph_project(const reprank_graph* graph, double p1, double p2,
                                                 reprank_graph** out);
REPRANK_API void reprank_graph_free(reprank_graph* graph);

/* skipped (optional) receives the number of ids not found in the graph. */
REPRANK_API reprank_status reprank_benchmark_read_file(const char* path, const reprank_graph* graph,
                                                       reprank_benchmark** out, size_t* skipped);
REPRANK_API size_t reprank_benchmark_size(const reprank_benchmark* benchmark);
REPRANK_API void reprank_benchmark_free(reprank_benchmark* benchmark);

/* ---- ranking ---------------------------------------------------------- */

typedef struct reprank_ranking_config {
  reprank_algorithm algorithm;
  double beta;
  double epsilon;
  double theta;
  double delta;
  size_t max_iterations;
} reprank_ranking_config;

typedef struct reprank_result_info {
  size_t iterations_used;
  int converged;
  double final_residual;
} reprank_result_info;

REPRANK_API void reprank_ranking_config_default(reprank_ranking_config* cfg);
REPRANK_API reprank_status reprank_algorithm_parse(const char* name, reprank_algorithm* out);
REPRANK_API reprank_status reprank_rank(const reprank_graph* graph, const reprank_ranking_config* cfg,
                                        reprank_result** out);
/* Borrowed arrays valid until the result is freed. Unrated items are NaN. */
REPRANK_API const double* reprank_result_qualities(const reprank_result* result, size_t* count);
REPRANK_API const double* reprank_result_reputations(const reprank_result* result, size_t* count);
REPRANK_API reprank_status reprank_result_info_get(const reprank_result* result, reprank_result_info* out);
/* item_id,quality,rank (rank = 1-based midrank) and user_id,reputation. */
REPRANK_API reprank_status reprank_result_write_items_csv(const reprank_result* result, const reprank_graph* graph,
                                                          char** out);
REPRANK_API reprank_status reprank_result_write_users_csv(const reprank_result* result, const reprank_graph* graph,
                                                          char** out);
REPRANK_API void reprank_result_free(reprank_result* result);

/* ---- metrics ---------------------------------------------------------- */

REPRANK_API reprank_status reprank_ranking_score(const reprank_result* result, const reprank_benchmark* benchmark,
                                                 double* out);
/* Pearson(R_i, e_i) with the truth aligned to the graph through user ids. */
REPRANK_API reprank_status reprank_truth_correlation(const reprank_result* result, const reprank_graph* graph,
                                                     const reprank_truth* truth, double* value, int* degenerate);

/* ---- synthetic networks ----------------------------------------------- */

typedef struct reprank_synth_spec {
  size_t num_users;
  size_t num_items;
  size_t num_links;
  double q_min;
  double q_max;
  double delta_min;
  double delta_max;
  int discretization_case; /* 0..4 */
  double spam_fraction;
  uint64_t seed;
} reprank_synth_spec;

REPRANK_API void reprank_synth_spec_default(reprank_synth_spec* spec);
REPRANK_API reprank_status reprank_synth_generate(const reprank_synth_spec* spec, reprank_graph** graph,
                                                  reprank_truth** truth);
REPRANK_API reprank_status reprank_truth_read_file(const char* path, reprank_truth** out);
REPRANK_API reprank_status reprank_truth_write(const reprank_truth* truth, char** out);
REPRANK_API void reprank_truth_free(reprank_truth* truth);

/* ---- sweeps ----------------------------------------------------------- */

typedef struct reprank_sweep_config {
  reprank_ranking_config ranking;
  reprank_metric metric;
  double grid_step;          /* used for an axis whose explicit values are absent */
  const double* p1_values;   /* optional explicit axis */
  size_t p1_count;
  const double* p2_values;
  size_t p2_count;
  size_t realizations;
  uint64_t master_seed;
  size_t threads;
  double benchmark_fraction; /* synthetic RS only */
  const char* tag;           /* optional label used in tables */
} reprank_sweep_config;

REPRANK_API void reprank_sweep_config_default(reprank_sweep_config* cfg);
REPRANK_API reprank_status reprank_sweep_run_real(const reprank_graph* graph, const reprank_benchmark* benchmark,
                                                  const reprank_sweep_config* cfg, reprank_sweep** out);
REPRANK_API reprank_status reprank_sweep_run_synth(const reprank_synth_spec* spec, const reprank_sweep_config* cfg,
                                                   reprank_sweep** out);
/* p1,p2,mean,std,n,converged_frac */
REPRANK_API reprank_status reprank_sweep_write_csv(const reprank_sweep* sweep, char** out);
REPRANK_API reprank_status reprank_sweep_optimum(const reprank_sweep* sweep, double* p1, double* p2, double* value);
/* RS at (0.5, 0.5) and at the optimum. */
REPRANK_API reprank_status reprank_sweep_compare(const reprank_sweep* sweep, double* original, double* projected);
REPRANK_API void reprank_sweep_free(reprank_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* REPRANK_REPRANK_H */
