// hoax: command-line front end over libhoax's C API.
//
//   hoax stats      --posts P --likes L
//   hoax intersect  --posts P --likes L --out-dir D [--keep-outside-likes]
//   hoax harmonic   --posts P --likes L --train T [--A --B --Ap --Bp --iters]
//   hoax logreg     --posts P --likes L --train T [--lambda --lr --epochs --tol]
//   hoax experiment sweep|kfold|one-page-out|half-pages-out --classifier ...
//   hoax synth      --out-dir D [--seed N ...]
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "hoax/hoax.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

/// Carries a C API failure out to main().
struct Failure {
  int exit_code;
  std::string message;
};

struct GlobalOptions {
  unsigned threads = 0;
  bool quiet = false;
  std::string output;  // empty = stdout
};

struct DatasetOptions {
  std::string dir;
  std::string posts;
  std::string likes;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dataset-dir", dir, "Directory holding posts.csv and likes.csv");
    cmd->add_option("--posts", posts, "posts.csv (post_id,page_id,label)");
    cmd->add_option("--likes", likes, "likes.csv (post_id,user_id)");
  }

  std::string posts_path() const { return !posts.empty() ? posts : (fs::path(dir) / "posts.csv").string(); }
  std::string likes_path() const { return !likes.empty() ? likes : (fs::path(dir) / "likes.csv").string(); }
  bool given() const { return !dir.empty() || (!posts.empty() && !likes.empty()); }
};

struct StringDeleter {
  void operator()(char* s) const { hoax_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct GraphDeleter {
  void operator()(hoax_graph* g) const { hoax_graph_free(g); }
};
using Graph = std::unique_ptr<hoax_graph, GraphDeleter>;

struct TrainingDeleter {
  void operator()(hoax_training* t) const { hoax_training_free(t); }
};
using Training = std::unique_ptr<hoax_training, TrainingDeleter>;

struct ModelDeleter {
  void operator()(hoax_model* m) const { hoax_model_free(m); }
};
using Model = std::unique_ptr<hoax_model, ModelDeleter>;

struct ReportDeleter {
  void operator()(hoax_report* r) const { hoax_report_free(r); }
};
using Report = std::unique_ptr<hoax_report, ReportDeleter>;

void check(hoax_status status) {
  if (status == HOAX_OK) return;
  const bool usage = status == HOAX_ERR_INVALID_ARGUMENT || status == HOAX_ERR_INVALID_PARAMS ||
                     status == HOAX_ERR_NULL_ARGUMENT;
  throw Failure{usage ? kExitUsage : kExitData, hoax_last_error()};
}

void usage_error(const std::string& message) { throw Failure{kExitUsage, message}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitData, "ParseError: cannot open " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes via a sibling temp file and rename, so readers never see a partial file.
/// Devices and pipes are written in place.
void write_atomic(const fs::path& path, const std::string& text) {
  std::error_code ec;
  const auto status = fs::status(path, ec);
  if (fs::exists(status) && !fs::is_regular_file(status)) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) throw Failure{kExitData, "IoError: write failed for " + path.string()};
    return;
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitData, "IoError: cannot write " + tmp.string()};
    out << text;
    out.flush();
    if (!out) throw Failure{kExitData, "IoError: write failed for " + tmp.string()};
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{kExitData, "IoError: cannot rename onto " + path.string()};
  }
}

void emit(const GlobalOptions& global, const std::string& text) {
  if (global.output.empty() || global.output == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_atomic(global.output, text);
  }
}

void note(const GlobalOptions& global, const std::string& message) {
  if (!global.quiet) std::cerr << message << '\n';
}

Graph load_graph(const DatasetOptions& data) {
  if (!data.given()) usage_error("a dataset is required: --dataset-dir D or --posts P --likes L");
  hoax_graph* raw = nullptr;
  check(hoax_graph_load(data.posts_path().c_str(), data.likes_path().c_str(), &raw));
  return Graph(raw);
}

void write_dataset(const hoax_graph* graph, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitData, "IoError: cannot create " + dir.string()};
  char* posts = nullptr;
  check(hoax_graph_posts_csv(graph, &posts));
  CString posts_text(posts);
  char* likes = nullptr;
  check(hoax_graph_likes_csv(graph, &likes));
  CString likes_text(likes);
  write_atomic(dir / "posts.csv", posts_text.get());
  write_atomic(dir / "likes.csv", likes_text.get());
}

void add_harmonic_options(CLI::App* cmd, hoax_harmonic_params& p) {
  cmd->add_option("--A", p.a, "User prior towards non-hoax")->capture_default_str();
  cmd->add_option("--B", p.b, "User prior towards hoax")->capture_default_str();
  cmd->add_option("--Ap", p.a_prime, "Post prior towards non-hoax")->capture_default_str();
  cmd->add_option("--Bp", p.b_prime, "Post prior towards hoax")->capture_default_str();
  cmd->add_option("--iters", p.iterations, "Update rounds")->capture_default_str();
}

void add_logreg_options(CLI::App* cmd, hoax_logreg_config& c) {
  cmd->add_option("--lambda", c.l2_lambda, "L2 penalty")->capture_default_str();
  cmd->add_option("--lr", c.learning_rate, "Learning rate")->capture_default_str();
  cmd->add_option("--epochs", c.max_epochs, "Maximum epochs")->capture_default_str();
  cmd->add_option("--tol", c.tolerance, "Stop when the loss changes less than this")->capture_default_str();
}

const auto kOpenUnitInterval = CLI::Validator(
    [](std::string& text) -> std::string {
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(text, &used);
        if (used != text.size()) return "not a number: " + text;
      } catch (const std::exception&) {
        return "not a number: " + text;
      }
      if (!(value > 0.0 && value < 1.0)) return "fraction must be in (0,1), got " + text;
      return {};
    },
    "FRACTION in (0,1)");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hoax / non-hoax classification of posts from user likes"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("hoax ") + hoax_version() + " (report schema " +
                           std::to_string(hoax_report_schema_version()) + ", csv schema " +
                           std::to_string(hoax_csv_schema_version()) + ")");

  GlobalOptions global;
  app.add_option("--threads", global.threads, "Worker threads, 0 = all cores")->capture_default_str();
  app.add_flag("--quiet", global.quiet, "Suppress progress messages");
  app.add_option("--output", global.output, "Write the main result here instead of stdout");

  // stats
  DatasetOptions stats_data;
  auto* stats = app.add_subcommand("stats", "Dataset statistics as JSON");
  stats_data.add_to(stats);

  // intersect
  DatasetOptions inter_data;
  std::string inter_out;
  bool keep_outside = false;
  auto* inter = app.add_subcommand("intersect", "Build the intersection dataset");
  inter_data.add_to(inter);
  inter->add_option("--out-dir", inter_out, "Where to write posts.csv/likes.csv")->required();
  inter->add_flag("--keep-outside-likes", keep_outside,
                  "Keep likes on retained posts from users who are not mixed");

  // harmonic
  DatasetOptions harm_data;
  std::string harm_train;
  hoax_harmonic_params harm_params;
  hoax_harmonic_params_default(&harm_params);
  auto* harm = app.add_subcommand("harmonic", "Classify posts with the harmonic algorithm");
  harm_data.add_to(harm);
  harm->add_option("--train", harm_train, "train.csv (post_id,label)")->required();
  add_harmonic_options(harm, harm_params);

  // logreg
  DatasetOptions lr_data;
  std::string lr_train, lr_save, lr_load;
  hoax_logreg_config lr_config;
  hoax_logreg_config_default(&lr_config);
  auto* lr = app.add_subcommand("logreg", "Classify posts with logistic regression");
  lr_data.add_to(lr);
  auto* lr_train_opt = lr->add_option("--train", lr_train, "train.csv (post_id,label)");
  auto* lr_load_opt = lr->add_option("--load-model", lr_load, "Use a saved model instead of training");
  lr_train_opt->excludes(lr_load_opt);
  lr->add_option("--save-model", lr_save, "Write the trained model (JSON user_id -> weight)");
  add_logreg_options(lr, lr_config);

  // experiment
  DatasetOptions exp_data;
  hoax_experiment_config exp_config;
  hoax_experiment_config_default(&exp_config);
  std::string exp_classifier = "harmonic", exp_dataset = "complete", exp_csv;
  std::vector<double> exp_fractions{0.001, 0.005, 0.01, 0.05, 0.1};
  auto* exp = app.add_subcommand("experiment", "Run an evaluation protocol");
  exp->require_subcommand(1);
  exp_data.add_to(exp);
  exp->add_option("--classifier", exp_classifier, "harmonic | logreg")
      ->check(CLI::IsMember({"harmonic", "logreg"}))
      ->capture_default_str();
  exp->add_option("--dataset", exp_dataset, "complete | intersection")
      ->check(CLI::IsMember({"complete", "intersection"}))
      ->capture_default_str();
  exp->add_option("--fractions", exp_fractions, "Training fractions for sweep")
      ->delimiter(',')
      ->check(kOpenUnitInterval)
      ->capture_default_str();
  exp->add_option("--runs", exp_config.runs, "Runs per fraction / half-pages-out runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exp->add_option("--folds", exp_config.folds, "k for kfold")->check(CLI::Range(2, 1 << 30))->capture_default_str();
  exp->add_option("--seed", exp_config.seed, "Base seed")->capture_default_str();
  exp->add_option("--csv", exp_csv, "Also write the plot-ready CSV fraction,mean,stdev");
  add_harmonic_options(exp, exp_config.harmonic);
  add_logreg_options(exp, exp_config.logreg);
  exp->fallthrough();
  const std::pair<const char*, const char*> protocols[] = {
      {"sweep", "Random training fractions, --runs runs each"},
      {"kfold", "k-fold cross-validation"},
      {"one-page-out", "Hold out each page in turn"},
      {"half-pages-out", "Hold out a random half of the pages, --runs times"}};
  for (const auto& [name, about] : protocols) exp->add_subcommand(name, about)->fallthrough();

  // synth
  hoax_synth_params synth_params;
  hoax_synth_params_default(&synth_params);
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--out-dir", synth_out, "Output directory")->required();
  synth->add_option("--pages-hoax", synth_params.n_pages_hoax)->capture_default_str();
  synth->add_option("--pages-nonhoax", synth_params.n_pages_nonhoax)->capture_default_str();
  synth->add_option("--posts-per-page", synth_params.posts_per_page)->capture_default_str();
  synth->add_option("--users", synth_params.n_users)->capture_default_str();
  synth->add_option("--likes-mean", synth_params.likes_per_user_mean, "Mean likes per user")
      ->capture_default_str();
  synth->add_option("--epsilon", synth_params.mixing_epsilon, "Probability a like crosses class")
      ->capture_default_str();
  synth->add_option("--skew", synth_params.popularity_skew, "Post popularity power-law exponent")
      ->capture_default_str();
  synth->add_option("--hoax-multiplier", synth_params.hoax_popularity_multiplier,
                    "Hoax popularity mass relative to non-hoax")
      ->capture_default_str();
  synth->add_option("--seed", synth_params.seed)->capture_default_str();

  for (auto* cmd : {stats, inter, harm, lr, exp, synth}) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*stats) {
      auto graph = load_graph(stats_data);
      char* json = nullptr;
      check(hoax_stats_json(graph.get(), &json));
      emit(global, CString(json).get());
    } else if (*inter) {
      auto graph = load_graph(inter_data);
      hoax_graph* raw = nullptr;
      char* json = nullptr;
      check(hoax_intersect(graph.get(), keep_outside ? 1 : 0, &raw, &json));
      Graph result(raw);
      CString json_text(json);
      write_dataset(result.get(), inter_out);
      emit(global, json_text.get());
      note(global, "wrote intersection dataset to " + inter_out);
    } else if (*harm) {
      auto graph = load_graph(harm_data);
      hoax_training* raw = nullptr;
      check(hoax_training_load(graph.get(), harm_train.c_str(), &raw));
      Training training(raw);
      char* csv = nullptr;
      check(hoax_harmonic_run(graph.get(), training.get(), &harm_params, global.threads, &csv));
      emit(global, CString(csv).get());
    } else if (*lr) {
      if (lr_train.empty() && lr_load.empty()) usage_error("logreg needs --train or --load-model");
      auto graph = load_graph(lr_data);
      Model model;
      if (!lr_load.empty()) {
        hoax_model* raw = nullptr;
        check(hoax_model_from_json(read_file(lr_load).c_str(), &raw));
        model.reset(raw);
      } else {
        hoax_training* raw_training = nullptr;
        check(hoax_training_load(graph.get(), lr_train.c_str(), &raw_training));
        Training training(raw_training);
        hoax_model* raw = nullptr;
        check(hoax_logreg_train(graph.get(), training.get(), &lr_config, global.threads, &raw));
        model.reset(raw);
      }
      if (!lr_save.empty()) {
        char* json = nullptr;
        check(hoax_model_to_json(model.get(), &json));
        write_atomic(lr_save, CString(json).get());
      }
      char* csv = nullptr;
      check(hoax_model_predict(model.get(), graph.get(), global.threads, &csv));
      emit(global, CString(csv).get());
    } else if (*exp) {
      const std::string protocol = exp->get_subcommands().front()->get_name();
      if (protocol == "sweep") exp_config.protocol = HOAX_PROTOCOL_SWEEP;
      else if (protocol == "kfold") exp_config.protocol = HOAX_PROTOCOL_KFOLD;
      else if (protocol == "one-page-out") exp_config.protocol = HOAX_PROTOCOL_ONE_PAGE_OUT;
      else exp_config.protocol = HOAX_PROTOCOL_HALF_PAGES_OUT;
      exp_config.classifier = exp_classifier == "logreg" ? HOAX_CLASSIFIER_LOGREG : HOAX_CLASSIFIER_HARMONIC;
      exp_config.fractions = exp_fractions.data();
      exp_config.n_fractions = exp_fractions.size();
      exp_config.dataset_name = exp_dataset.c_str();
      exp_config.threads = global.threads;

      auto graph = load_graph(exp_data);
      if (exp_dataset == "intersection") {
        hoax_graph* raw = nullptr;
        check(hoax_intersect(graph.get(), 0, &raw, nullptr));
        graph.reset(raw);
      }
      hoax_report* raw = nullptr;
      check(hoax_experiment_run(graph.get(), &exp_config, &raw));
      Report report(raw);
      char* json = nullptr;
      check(hoax_report_json(report.get(), &json));
      CString json_text(json);
      if (!exp_csv.empty()) {
        char* csv = nullptr;
        check(hoax_report_csv(report.get(), &csv));
        write_atomic(exp_csv, CString(csv).get());
      }
      emit(global, json_text.get());
    } else if (*synth) {
      hoax_graph* raw = nullptr;
      check(hoax_graph_synthesize(&synth_params, &raw));
      Graph graph(raw);
      write_dataset(graph.get(), synth_out);
      note(global, "wrote " + std::to_string(hoax_graph_num_posts(graph.get())) + " posts, " +
                       std::to_string(hoax_graph_num_users(graph.get())) + " users, " +
                       std::to_string(hoax_graph_num_likes(graph.get())) + " likes to " + synth_out);
    }
  } catch (const Failure& f) {
    std::cerr << "hoax: " << f.message << '\n';
    return f.exit_code;
  }
  return 0;
}
