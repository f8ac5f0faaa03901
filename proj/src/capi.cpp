#include "hoax/hoax.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "hoax/error.hpp"
#include "hoax/experiments.hpp"
#include "hoax/harmonic.hpp"
#include "hoax/ingest.hpp"
#include "hoax/intersect.hpp"
#include "hoax/logreg.hpp"
#include "hoax/synth.hpp"
#include "hoax/version.hpp"

struct hoax_graph {
  hoax::LikeGraph graph;
};

struct hoax_training {
  hoax::TrainingSet set;
};

struct hoax_model {
  hoax::LogRegModel model;
};

struct hoax_report {
  std::vector<hoax::ExperimentReport> reports;
  hoax::ReportContext context;
};

namespace {

thread_local std::string last_error;

hoax_status fail(hoax_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

hoax_status status_of(hoax::ErrorCode code) {
  using hoax::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return HOAX_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return HOAX_ERR_PARSE;
    case ErrorCode::Io: return HOAX_ERR_IO;
    case ErrorCode::UnknownPostId: return HOAX_ERR_UNKNOWN_POST;
    case ErrorCode::DuplicatePostId: return HOAX_ERR_DUPLICATE_POST;
    case ErrorCode::OverlappingTrainingSets: return HOAX_ERR_OVERLAPPING_TRAINING;
    case ErrorCode::EmptyTrainingSet: return HOAX_ERR_EMPTY_TRAINING;
    case ErrorCode::NonFiniteLoss: return HOAX_ERR_NONFINITE_LOSS;
    case ErrorCode::EmptyEvaluationSet: return HOAX_ERR_EMPTY_EVALUATION;
    case ErrorCode::FractionTooSmall: return HOAX_ERR_FRACTION_TOO_SMALL;
    case ErrorCode::TooFewPosts: return HOAX_ERR_TOO_FEW_POSTS;
    case ErrorCode::SinglePage: return HOAX_ERR_SINGLE_PAGE;
    case ErrorCode::InvalidParams: return HOAX_ERR_INVALID_PARAMS;
  }
  return HOAX_ERR_INTERNAL;
}

/// Runs body() and converts exceptions into status codes.
template <class Body>
hoax_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return HOAX_OK;
  } catch (const hoax::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HOAX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HOAX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HOAX_ERR_INTERNAL, "unknown exception");
  }
}

char* to_c_string(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

hoax::HarmonicParams from_c(const hoax_harmonic_params& p) {
  return {p.a, p.b, p.a_prime, p.b_prime, p.iterations};
}

hoax::LogRegConfig from_c(const hoax_logreg_config& c) {
  hoax::LogRegConfig config;
  config.l2_lambda = c.l2_lambda;
  config.learning_rate = c.learning_rate;
  config.max_epochs = c.max_epochs;
  config.tolerance = c.tolerance;
  return config;
}

#define HOAX_REQUIRE(ptr) \
  if (!(ptr)) return fail(HOAX_ERR_NULL_ARGUMENT, #ptr " is NULL")

}  // namespace

extern "C" {

const char* hoax_version(void) { return hoax::kVersion; }
int hoax_report_schema_version(void) { return hoax::kReportSchemaVersion; }
int hoax_csv_schema_version(void) { return hoax::kCsvSchemaVersion; }

const char* hoax_last_error(void) { return last_error.c_str(); }

const char* hoax_status_name(hoax_status status) {
  switch (status) {
    case HOAX_OK: return "Ok";
    case HOAX_ERR_NULL_ARGUMENT: return "NullArgument";
    case HOAX_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HOAX_ERR_PARSE: return "ParseError";
    case HOAX_ERR_IO: return "IoError";
    case HOAX_ERR_UNKNOWN_POST: return "UnknownPostId";
    case HOAX_ERR_DUPLICATE_POST: return "DuplicatePostId";
    case HOAX_ERR_OVERLAPPING_TRAINING: return "OverlappingTrainingSets";
    case HOAX_ERR_EMPTY_TRAINING: return "EmptyTrainingSet";
    case HOAX_ERR_NONFINITE_LOSS: return "NonFiniteLoss";
    case HOAX_ERR_EMPTY_EVALUATION: return "EmptyEvaluationSet";
    case HOAX_ERR_FRACTION_TOO_SMALL: return "FractionTooSmall";
    case HOAX_ERR_TOO_FEW_POSTS: return "TooFewPosts";
    case HOAX_ERR_SINGLE_PAGE: return "SinglePage";
    case HOAX_ERR_INVALID_PARAMS: return "InvalidParams";
    case HOAX_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void hoax_string_free(char* text) { std::free(text); }

void hoax_harmonic_params_default(hoax_harmonic_params* params) {
  if (!params) return;
  const hoax::HarmonicParams d;
  *params = {d.a, d.b, d.a_prime, d.b_prime, d.iterations};
}

void hoax_logreg_config_default(hoax_logreg_config* config) {
  if (!config) return;
  const hoax::LogRegConfig d;
  config->l2_lambda = d.l2_lambda;
  config->learning_rate = d.learning_rate;
  config->max_epochs = d.max_epochs;
  config->tolerance = d.tolerance;
}

void hoax_synth_params_default(hoax_synth_params* params) {
  if (!params) return;
  const hoax::SynthParams d;
  *params = {d.n_pages_hoax,        d.n_pages_nonhoax, d.posts_per_page,
             d.n_users,             d.likes_per_user_mean, d.mixing_epsilon,
             d.popularity_skew,     d.hoax_popularity_multiplier, d.seed};
}

void hoax_experiment_config_default(hoax_experiment_config* config) {
  if (!config) return;
  static const double kFractions[] = {0.001, 0.005, 0.01, 0.05, 0.1};
  config->protocol = HOAX_PROTOCOL_SWEEP;
  config->classifier = HOAX_CLASSIFIER_HARMONIC;
  hoax_harmonic_params_default(&config->harmonic);
  hoax_logreg_config_default(&config->logreg);
  config->fractions = kFractions;
  config->n_fractions = sizeof kFractions / sizeof kFractions[0];
  config->runs = 50;
  config->folds = 5;
  config->seed = 1;
  config->dataset_name = "complete";
  config->threads = 1;
}

hoax_status hoax_graph_load(const char* posts_path, const char* likes_path, hoax_graph** out) {
  HOAX_REQUIRE(posts_path);
  HOAX_REQUIRE(likes_path);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new hoax_graph{hoax::load_dataset(posts_path, likes_path)}; });
}

hoax_status hoax_graph_synthesize(const hoax_synth_params* params, hoax_graph** out) {
  HOAX_REQUIRE(params);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    hoax::SynthParams p;
    p.n_pages_hoax = params->n_pages_hoax;
    p.n_pages_nonhoax = params->n_pages_nonhoax;
    p.posts_per_page = params->posts_per_page;
    p.n_users = params->n_users;
    p.likes_per_user_mean = params->likes_per_user_mean;
    p.mixing_epsilon = params->mixing_epsilon;
    p.popularity_skew = params->popularity_skew;
    p.hoax_popularity_multiplier = params->hoax_popularity_multiplier;
    p.seed = params->seed;
    *out = new hoax_graph{hoax::generate_synthetic(p)};
  });
}

void hoax_graph_free(hoax_graph* graph) { delete graph; }

size_t hoax_graph_num_posts(const hoax_graph* graph) { return graph ? graph->graph.num_posts() : 0; }
size_t hoax_graph_num_users(const hoax_graph* graph) { return graph ? graph->graph.num_users() : 0; }
size_t hoax_graph_num_likes(const hoax_graph* graph) { return graph ? graph->graph.num_likes() : 0; }
size_t hoax_graph_num_pages(const hoax_graph* graph) { return graph ? graph->graph.num_pages() : 0; }

hoax_status hoax_graph_posts_csv(const hoax_graph* graph, char** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::posts_csv(graph->graph)); });
}

hoax_status hoax_graph_likes_csv(const hoax_graph* graph, char** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::likes_csv(graph->graph)); });
}

hoax_status hoax_stats_json(const hoax_graph* graph, char** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::stats_json(hoax::compute_stats(graph->graph))); });
}

hoax_status hoax_intersect(const hoax_graph* graph, int keep_outside_likes, hoax_graph** out,
                           char** stats_json) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto report = hoax::build_intersection(graph->graph, {keep_outside_likes != 0});
    std::string json = hoax::intersection_json(report);
    auto* handle = new hoax_graph{std::move(report.graph)};
    if (stats_json) {
      try {
        *stats_json = to_c_string(json);
      } catch (...) {
        delete handle;
        throw;
      }
    }
    *out = handle;
  });
}

hoax_status hoax_training_load(const hoax_graph* graph, const char* path, hoax_training** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(path);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new hoax_training{hoax::load_training(path, graph->graph)}; });
}

void hoax_training_free(hoax_training* training) { delete training; }

size_t hoax_training_size(const hoax_training* training) { return training ? training->set.size() : 0; }

hoax_status hoax_harmonic_run(const hoax_graph* graph, const hoax_training* training,
                              const hoax_harmonic_params* params, unsigned threads, char** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(training);
  HOAX_REQUIRE(out);
  return guarded([&] {
    hoax::HarmonicParams p;
    if (params) p = from_c(*params);
    const auto scores = hoax::run_harmonic(graph->graph, training->set, p, threads);
    *out = to_c_string(hoax::harmonic_csv(graph->graph, scores));
  });
}

hoax_status hoax_logreg_train(const hoax_graph* graph, const hoax_training* training,
                              const hoax_logreg_config* config, unsigned threads, hoax_model** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(training);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    hoax::LogRegConfig c;
    if (config) c = from_c(*config);
    *out = new hoax_model{hoax::train_logreg(graph->graph, training->set, c, threads)};
  });
}

hoax_status hoax_model_from_json(const char* json, hoax_model** out) {
  HOAX_REQUIRE(json);
  HOAX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new hoax_model{hoax::model_from_json(json)}; });
}

hoax_status hoax_model_to_json(const hoax_model* model, char** out) {
  HOAX_REQUIRE(model);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::model_to_json(model->model)); });
}

void hoax_model_free(hoax_model* model) { delete model; }

hoax_status hoax_model_predict(const hoax_model* model, const hoax_graph* graph, unsigned threads,
                               char** out) {
  HOAX_REQUIRE(model);
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(out);
  return guarded([&] {
    const auto predictions = hoax::predict_all(model->model, graph->graph, threads);
    *out = to_c_string(hoax::logreg_csv(graph->graph, predictions));
  });
}

hoax_status hoax_experiment_run(const hoax_graph* graph, const hoax_experiment_config* config,
                                hoax_report** out) {
  HOAX_REQUIRE(graph);
  HOAX_REQUIRE(config);
  HOAX_REQUIRE(out);
  *out = nullptr;
  if (config->protocol == HOAX_PROTOCOL_SWEEP && config->n_fractions > 0 && !config->fractions)
    return fail(HOAX_ERR_NULL_ARGUMENT, "config->fractions is NULL");
  return guarded([&] {
    hoax::ClassifierConfig classifier;
    classifier.kind = config->classifier == HOAX_CLASSIFIER_LOGREG ? hoax::ClassifierKind::LogReg
                                                                   : hoax::ClassifierKind::Harmonic;
    classifier.harmonic = from_c(config->harmonic);
    classifier.logreg = from_c(config->logreg);
    classifier.harmonic.validate();
    classifier.logreg.validate();

    auto report = std::make_unique<hoax_report>();
    report->context.dataset = config->dataset_name ? config->dataset_name : "complete";
    const auto& g = graph->graph;
    switch (config->protocol) {
      case HOAX_PROTOCOL_SWEEP:
        report->reports = hoax::sweep(g, classifier, std::span(config->fractions, config->n_fractions),
                                      config->runs, config->seed, config->threads);
        report->context.base_seed = config->seed;
        break;
      case HOAX_PROTOCOL_KFOLD:
        report->reports.push_back(hoax::kfold(g, classifier, config->folds, config->seed, config->threads));
        report->context.base_seed = config->seed;
        break;
      case HOAX_PROTOCOL_ONE_PAGE_OUT:
        report->reports.push_back(hoax::one_page_out(g, classifier, config->threads));
        break;
      case HOAX_PROTOCOL_HALF_PAGES_OUT:
        report->reports.push_back(
            hoax::half_pages_out(g, classifier, config->runs, config->seed, config->threads));
        report->context.base_seed = config->seed;
        break;
      default:
        throw hoax::Error(hoax::ErrorCode::InvalidArgument, "unknown protocol");
    }
    *out = report.release();
  });
}

void hoax_report_free(hoax_report* report) { delete report; }

hoax_status hoax_report_json(const hoax_report* report, char** out) {
  HOAX_REQUIRE(report);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::reports_json(report->reports, report->context)); });
}

hoax_status hoax_report_csv(const hoax_report* report, char** out) {
  HOAX_REQUIRE(report);
  HOAX_REQUIRE(out);
  return guarded([&] { *out = to_c_string(hoax::reports_csv(report->reports)); });
}

}  // extern "C"
