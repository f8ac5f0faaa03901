/*
 * hoax.h - C interface of libhoax.
 *
 * Classifies posts as hoax / non-hoax from the bipartite graph of user likes,
 * and runs the evaluation protocols over such graphs.
 *
 * Conventions:
 *   - Objects are opaque handles created by *_load / *_create style calls and
 *     released with the matching *_free. Passing NULL to *_free is a no-op.
 *   - Every fallible call returns hoax_status; HOAX_OK is 0. On failure
 *     hoax_last_error() returns a message for the calling thread, valid until
 *     that thread's next call into the library.
 *   - Text results (CSV, JSON) are returned as malloc'ed NUL-terminated
 *     strings that the caller releases with hoax_string_free.
 *   - Handles are immutable after creation and may be shared across threads.
 */
#ifndef HOAX_HOAX_H
#define HOAX_HOAX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HOAX_BUILDING_LIBRARY)
#    define HOAX_API __declspec(dllexport)
#  else
#    define HOAX_API __declspec(dllimport)
#  endif
#else
#  define HOAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hoax_status {
  HOAX_OK = 0,
  HOAX_ERR_NULL_ARGUMENT = 1,
  HOAX_ERR_INVALID_ARGUMENT = 2,
  HOAX_ERR_PARSE = 3,
  HOAX_ERR_IO = 4,
  HOAX_ERR_UNKNOWN_POST = 5,
  HOAX_ERR_DUPLICATE_POST = 6,
  HOAX_ERR_OVERLAPPING_TRAINING = 7,
  HOAX_ERR_EMPTY_TRAINING = 8,
  HOAX_ERR_NONFINITE_LOSS = 9,
  HOAX_ERR_EMPTY_EVALUATION = 10,
  HOAX_ERR_FRACTION_TOO_SMALL = 11,
  HOAX_ERR_TOO_FEW_POSTS = 12,
  HOAX_ERR_SINGLE_PAGE = 13,
  HOAX_ERR_INVALID_PARAMS = 14,
  HOAX_ERR_INTERNAL = 15
} hoax_status;

typedef enum hoax_classifier {
  HOAX_CLASSIFIER_HARMONIC = 0,
  HOAX_CLASSIFIER_LOGREG = 1
} hoax_classifier;

typedef enum hoax_protocol {
  HOAX_PROTOCOL_SWEEP = 0,
  HOAX_PROTOCOL_KFOLD = 1,
  HOAX_PROTOCOL_ONE_PAGE_OUT = 2,
  HOAX_PROTOCOL_HALF_PAGES_OUT = 3
} hoax_protocol;

typedef struct hoax_graph hoax_graph;
typedef struct hoax_training hoax_training;
typedef struct hoax_model hoax_model;
typedef struct hoax_report hoax_report;

typedef struct hoax_harmonic_params {
  double a;
  double b;
  double a_prime;
  double b_prime;
  int iterations;
} hoax_harmonic_params;

typedef struct hoax_logreg_config {
  double l2_lambda;
  double learning_rate;
  int max_epochs;
  double tolerance;
} hoax_logreg_config;

typedef struct hoax_synth_params {
  uint32_t n_pages_hoax;
  uint32_t n_pages_nonhoax;
  uint32_t posts_per_page;
  uint32_t n_users;
  double likes_per_user_mean;
  double mixing_epsilon;
  double popularity_skew;
  double hoax_popularity_multiplier;
  uint64_t seed;
} hoax_synth_params;

typedef struct hoax_experiment_config {
  hoax_protocol protocol;
  hoax_classifier classifier;
  hoax_harmonic_params harmonic;
  hoax_logreg_config logreg;
  const double* fractions; /* sweep only */
  size_t n_fractions;
  int runs;                /* sweep, half-pages-out */
  int folds;               /* kfold */
  uint64_t seed;           /* base seed; ignored by one-page-out */
  const char* dataset_name; /* recorded in the report, e.g. "complete" */
  unsigned threads;        /* 0 = hardware concurrency */
} hoax_experiment_config;

/* Library and schema versions. */
HOAX_API const char* hoax_version(void);
HOAX_API int hoax_report_schema_version(void);
HOAX_API int hoax_csv_schema_version(void);

HOAX_API const char* hoax_last_error(void);
HOAX_API const char* hoax_status_name(hoax_status status);
HOAX_API void hoax_string_free(char* text);

/* Defaults for every parameter block. */
HOAX_API void hoax_harmonic_params_default(hoax_harmonic_params* params);
HOAX_API void hoax_logreg_config_default(hoax_logreg_config* config);
HOAX_API void hoax_synth_params_default(hoax_synth_params* params);
HOAX_API void hoax_experiment_config_default(hoax_experiment_config* config);

/* Graphs. */
HOAX_API hoax_status hoax_graph_load(const char* posts_path, const char* likes_path,
                                     hoax_graph** out);
HOAX_API hoax_status hoax_graph_synthesize(const hoax_synth_params* params,
                                           hoax_graph** out);
HOAX_API void hoax_graph_free(hoax_graph* graph);
HOAX_API size_t hoax_graph_num_posts(const hoax_graph* graph);
HOAX_API size_t hoax_graph_num_users(const hoax_graph* graph);
HOAX_API size_t hoax_graph_num_likes(const hoax_graph* graph);
HOAX_API size_t hoax_graph_num_pages(const hoax_graph* graph);
/* posts.csv / likes.csv text in the ingest schema. */
HOAX_API hoax_status hoax_graph_posts_csv(const hoax_graph* graph, char** out);
HOAX_API hoax_status hoax_graph_likes_csv(const hoax_graph* graph, char** out);

/* Dataset statistics as JSON. */
HOAX_API hoax_status hoax_stats_json(const hoax_graph* graph, char** out);

/* Intersection dataset. *stats_json (optional, may be NULL) receives the
 * straddler summary. */
HOAX_API hoax_status hoax_intersect(const hoax_graph* graph, int keep_outside_likes,
                                    hoax_graph** out, char** stats_json);

/* Training sets from a train.csv (post_id,label). */
HOAX_API hoax_status hoax_training_load(const hoax_graph* graph, const char* path,
                                        hoax_training** out);
HOAX_API void hoax_training_free(hoax_training* training);
HOAX_API size_t hoax_training_size(const hoax_training* training);

/* Harmonic classification; *out receives CSV post_id,q,label. */
HOAX_API hoax_status hoax_harmonic_run(const hoax_graph* graph,
                                       const hoax_training* training,
                                       const hoax_harmonic_params* params,
                                       unsigned threads, char** out);

/* Logistic regression. */
HOAX_API hoax_status hoax_logreg_train(const hoax_graph* graph,
                                       const hoax_training* training,
                                       const hoax_logreg_config* config,
                                       unsigned threads, hoax_model** out);
HOAX_API hoax_status hoax_model_from_json(const char* json, hoax_model** out);
HOAX_API hoax_status hoax_model_to_json(const hoax_model* model, char** out);
HOAX_API void hoax_model_free(hoax_model* model);
/* CSV post_id,p,label for every post of graph. */
HOAX_API hoax_status hoax_model_predict(const hoax_model* model, const hoax_graph* graph,
                                        unsigned threads, char** out);

/* Evaluation protocols. */
HOAX_API hoax_status hoax_experiment_run(const hoax_graph* graph,
                                         const hoax_experiment_config* config,
                                         hoax_report** out);
HOAX_API void hoax_report_free(hoax_report* report);
HOAX_API hoax_status hoax_report_json(const hoax_report* report, char** out);
/* Plot-ready CSV fraction,mean,stdev. */
HOAX_API hoax_status hoax_report_csv(const hoax_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* HOAX_HOAX_H */
