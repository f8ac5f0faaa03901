#include "hoax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hoax/error.hpp"
#include "hoax/format.hpp"
#include "hoax/random.hpp"
#include "hoax/version.hpp"
#include "json_out.hpp"
#include "parallel.hpp"

namespace hoax {

std::string_view to_string(Protocol protocol) noexcept {
  switch (protocol) {
    case Protocol::Sweep: return "sweep";
    case Protocol::KFold: return "kfold";
    case Protocol::OnePageOut: return "one-page-out";
    case Protocol::HalfPagesOut: return "half-pages-out";
  }
  return "unknown";
}

std::string_view to_string(ClassifierKind kind) noexcept {
  return kind == ClassifierKind::Harmonic ? "harmonic" : "logreg";
}

std::vector<Label> classify(const LikeGraph& g, const TrainingSet& training,
                            const ClassifierConfig& config, unsigned threads) {
  std::vector<Label> labels(g.num_posts());
  if (config.kind == ClassifierKind::Harmonic) {
    const auto scores = run_harmonic(g, training, config.harmonic, threads);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = scores[i].label;
  } else {
    const auto model = train_logreg(g, training, config.logreg, threads);
    const auto predictions = predict_all(model, g, threads);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = predictions[i].label;
  }
  return labels;
}

TrainingSplit split_by_truth(const LikeGraph& g, std::span<const PostIndex> train_posts) {
  std::vector<bool> in_train(g.num_posts(), false);
  for (PostIndex i : train_posts) in_train[i] = true;
  TrainingSplit split;
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    if (!in_train[i]) split.eval.push_back(i);
    else if (g.label(i) == Label::Hoax) split.train.hoax.push_back(i);
    else split.train.nonhoax.push_back(i);
  }
  return split;
}

void check_partition(const LikeGraph& g, const TrainingSplit& split) {
  std::vector<int> seen(g.num_posts(), 0);
  auto mark = [&](std::span<const PostIndex> posts) {
    for (PostIndex i : posts) {
      if (i >= g.num_posts()) throw std::logic_error("split references a post outside the graph");
      ++seen[i];
    }
  };
  mark(split.train.hoax);
  mark(split.train.nonhoax);
  mark(split.eval);
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw std::logic_error("split does not partition the posts");
  for (PostIndex i : split.train.hoax)
    if (g.label(i) != Label::Hoax) throw std::logic_error("training hoax label disagrees with truth");
  for (PostIndex i : split.train.nonhoax)
    if (g.label(i) != Label::NonHoax) throw std::logic_error("training non-hoax label disagrees with truth");
}

double accuracy(std::span<const Label> predicted, std::span<const Label> truth,
                std::span<const PostIndex> over) {
  if (over.empty()) throw Error(ErrorCode::EmptyEvaluationSet, "no posts to evaluate");
  std::size_t correct = 0;
  for (PostIndex i : over)
    if (predicted[i] == truth[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(over.size());
}

std::size_t training_count(std::size_t n_posts, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "fraction must be in (0,1), got " + format_double(fraction));
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n_posts) + 0.5));
  if (count == 0)
    throw Error(ErrorCode::FractionTooSmall,
                "fraction " + format_double(fraction) + " of " + std::to_string(n_posts) + " posts rounds to 0");
  return count;
}

TrainingSplit random_fraction_split(const LikeGraph& g, double fraction, std::uint64_t seed) {
  const auto count = training_count(g.num_posts(), fraction);
  Rng rng(seed);
  const auto chosen = sample_without_replacement(static_cast<std::uint32_t>(g.num_posts()),
                                                 static_cast<std::uint32_t>(count), rng);
  return split_by_truth(g, chosen);
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  a.n_runs = values.size();
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  a.mean = sum / n;
  if (values.size() == 1) {
    a.degenerate = true;
    return a;
  }
  double squares = 0.0;
  for (double v : values) squares += (v - a.mean) * (v - a.mean);
  a.stdev = std::sqrt(squares / (n - 1.0));
  a.stderr_of_mean = a.stdev / std::sqrt(n);
  return a;
}

namespace {

std::vector<Label> truth_of(const LikeGraph& g) {
  std::vector<Label> truth(g.num_posts());
  for (PostIndex i = 0; i < g.num_posts(); ++i) truth[i] = g.label(i);
  return truth;
}

RunResult evaluate(const LikeGraph& g, const std::vector<Label>& truth,
                   const TrainingSplit& split, const ClassifierConfig& config) {
  check_partition(g, split);
  const auto predicted = classify(g, split.train, config, 1);
  RunResult r;
  r.n_train = split.train.size();
  r.n_eval = split.eval.size();
  r.train_fraction = static_cast<double>(r.n_train) / static_cast<double>(g.num_posts());
  r.accuracy = accuracy(predicted, truth, split.eval);
  return r;
}

/// Runs make_run(r) for r in [0, n) across threads; results stay in index order.
template <class MakeRun>
ExperimentReport run_protocol(Protocol protocol, const ClassifierConfig& config, std::size_t n,
                              unsigned threads, MakeRun&& make_run) {
  ExperimentReport report;
  report.protocol = protocol;
  report.classifier = config;
  report.runs.resize(n);
  detail::parallel_for(
      n, threads,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          report.runs[r] = make_run(r);
          report.runs[r].index = r;
        }
      },
      1);
  std::vector<double> accuracies;
  for (const auto& run : report.runs) accuracies.push_back(run.accuracy);
  report.aggregate = aggregate(accuracies);
  return report;
}

std::vector<PostIndex> posts_on_pages(const LikeGraph& g, std::span<const PageIndex> pages) {
  std::vector<bool> held(g.num_pages(), false);
  for (PageIndex p : pages) held[p] = true;
  std::vector<PostIndex> posts;
  for (PostIndex i = 0; i < g.num_posts(); ++i)
    if (held[g.page_of(i)]) posts.push_back(i);
  return posts;
}

/// Complement of `held_out` as the training set.
TrainingSplit hold_out(const LikeGraph& g, std::span<const PostIndex> held_out) {
  std::vector<bool> held(g.num_posts(), false);
  for (PostIndex i : held_out) held[i] = true;
  std::vector<PostIndex> train;
  for (PostIndex i = 0; i < g.num_posts(); ++i)
    if (!held[i]) train.push_back(i);
  return split_by_truth(g, train);
}

void require_runs(int runs) {
  if (runs < 1) throw Error(ErrorCode::InvalidArgument, "runs must be at least 1");
}

void require_pages(const LikeGraph& g) {
  if (g.num_pages() < 2)
    throw Error(ErrorCode::SinglePage, "need at least 2 pages, have " + std::to_string(g.num_pages()));
}

}  // namespace

std::vector<ExperimentReport> sweep(const LikeGraph& g, const ClassifierConfig& config,
                                    std::span<const double> fractions, int runs,
                                    std::uint64_t base_seed, unsigned threads) {
  require_runs(runs);
  for (double f : fractions) training_count(g.num_posts(), f);
  const auto truth = truth_of(g);
  std::vector<ExperimentReport> reports;
  for (double fraction : fractions) {
    auto report = run_protocol(Protocol::Sweep, config, static_cast<std::size_t>(runs), threads,
                               [&](std::size_t r) {
                                 const std::uint64_t seed = base_seed + r;
                                 auto result = evaluate(g, truth, random_fraction_split(g, fraction, seed), config);
                                 result.seed = seed;
                                 return result;
                               });
    report.requested_fraction = fraction;
    reports.push_back(std::move(report));
  }
  return reports;
}

ExperimentReport kfold(const LikeGraph& g, const ClassifierConfig& config, int k,
                       std::uint64_t seed, unsigned threads) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  const std::size_t n = g.num_posts();
  const auto folds = static_cast<std::size_t>(k);
  if (n < folds)
    throw Error(ErrorCode::TooFewPosts, std::to_string(n) + " posts for " + std::to_string(k) + " folds");

  Rng rng(seed);
  const auto order = sample_without_replacement(static_cast<std::uint32_t>(n),
                                                static_cast<std::uint32_t>(n), rng);
  std::vector<std::size_t> starts{0};
  for (std::size_t f = 0; f < folds; ++f)
    starts.push_back(starts.back() + n / folds + (f < n % folds ? 1 : 0));

  const auto truth = truth_of(g);
  auto report = run_protocol(Protocol::KFold, config, folds, threads, [&](std::size_t f) {
    std::vector<PostIndex> held(order.begin() + static_cast<std::ptrdiff_t>(starts[f]),
                                order.begin() + static_cast<std::ptrdiff_t>(starts[f + 1]));
    auto result = evaluate(g, truth, hold_out(g, held), config);
    result.seed = seed;
    return result;
  });
  return report;
}

ExperimentReport one_page_out(const LikeGraph& g, const ClassifierConfig& config, unsigned threads) {
  require_pages(g);
  const auto truth = truth_of(g);
  return run_protocol(Protocol::OnePageOut, config, g.num_pages(), threads, [&](std::size_t p) {
    const PageIndex page = static_cast<PageIndex>(p);
    auto result = evaluate(g, truth, hold_out(g, posts_on_pages(g, std::span(&page, 1))), config);
    result.held_out_pages = {g.page_id(page)};
    return result;
  });
}

ExperimentReport half_pages_out(const LikeGraph& g, const ClassifierConfig& config, int runs,
                                std::uint64_t base_seed, unsigned threads) {
  require_pages(g);
  require_runs(runs);
  const auto truth = truth_of(g);
  const auto n_pages = static_cast<std::uint32_t>(g.num_pages());
  return run_protocol(Protocol::HalfPagesOut, config, static_cast<std::size_t>(runs), threads,
                      [&](std::size_t r) {
                        const std::uint64_t seed = base_seed + r;
                        Rng rng(seed);
                        auto pages = sample_without_replacement(n_pages, n_pages / 2, rng);
                        std::sort(pages.begin(), pages.end());
                        auto result = evaluate(g, truth, hold_out(g, posts_on_pages(g, pages)), config);
                        result.seed = seed;
                        for (PageIndex p : pages) result.held_out_pages.push_back(g.page_id(p));
                        return result;
                      });
}

namespace {

detail::ordered_json classifier_json(const ClassifierConfig& c) {
  detail::ordered_json j;
  j["kind"] = std::string(to_string(c.kind));
  if (c.kind == ClassifierKind::Harmonic) {
    j["A"] = c.harmonic.a;
    j["B"] = c.harmonic.b;
    j["A_prime"] = c.harmonic.a_prime;
    j["B_prime"] = c.harmonic.b_prime;
    j["iterations"] = c.harmonic.iterations;
  } else {
    j["l2_lambda"] = c.logreg.l2_lambda;
    j["learning_rate"] = c.logreg.learning_rate;
    j["max_epochs"] = c.logreg.max_epochs;
    j["tolerance"] = c.logreg.tolerance;
  }
  return j;
}

detail::ordered_json run_json(const RunResult& r, Protocol protocol) {
  detail::ordered_json j;
  j["run"] = r.index;
  if (protocol == Protocol::KFold) j["fold"] = r.index;
  if (r.seed) j["seed"] = *r.seed;
  if (protocol == Protocol::OnePageOut) j["page"] = r.held_out_pages.front();
  if (protocol == Protocol::HalfPagesOut) j["held_out_pages"] = r.held_out_pages;
  j["train_fraction"] = r.train_fraction.value_or(0.0);
  j["n_train"] = r.n_train;
  j["n_eval"] = r.n_eval;
  j["accuracy"] = r.accuracy;
  return j;
}

double mean_train_fraction(const ExperimentReport& r) {
  if (r.requested_fraction) return *r.requested_fraction;
  double sum = 0.0;
  for (const auto& run : r.runs) sum += run.train_fraction.value_or(0.0);
  return r.runs.empty() ? 0.0 : sum / static_cast<double>(r.runs.size());
}

}  // namespace

std::string reports_json(std::span<const ExperimentReport> reports, const ReportContext& context) {
  detail::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generator"] = std::string("hoax ") + kVersion;
  j["prng"] = std::string(Rng::kName);
  j["dataset"] = context.dataset;
  j["base_seed"] = context.base_seed ? detail::ordered_json(*context.base_seed) : detail::ordered_json();
  if (!reports.empty()) {
    j["protocol"] = std::string(to_string(reports.front().protocol));
    j["classifier"] = std::string(to_string(reports.front().classifier.kind));
    j["classifier_config"] = classifier_json(reports.front().classifier);
  }
  auto list = detail::ordered_json::array();
  for (const auto& r : reports) {
    detail::ordered_json entry;
    entry["train_fraction"] =
        r.requested_fraction ? detail::ordered_json(*r.requested_fraction) : detail::ordered_json();
    auto runs = detail::ordered_json::array();
    for (const auto& run : r.runs) runs.push_back(run_json(run, r.protocol));
    entry["per_run"] = std::move(runs);
    entry["aggregate"]["mean"] = r.aggregate.mean;
    entry["aggregate"]["stdev"] = r.aggregate.stdev;
    entry["aggregate"]["stderr_of_mean"] = r.aggregate.stderr_of_mean;
    entry["aggregate"]["n_runs"] = r.aggregate.n_runs;
    entry["aggregate"]["degenerate"] = r.aggregate.degenerate;
    list.push_back(std::move(entry));
  }
  j["reports"] = std::move(list);
  return detail::dump_json(j);
}

std::string reports_csv(std::span<const ExperimentReport> reports) {
  std::string out = "fraction,mean,stdev\n";
  for (const auto& r : reports) {
    out += format_double(mean_train_fraction(r));
    out += ',';
    out += format_double(r.aggregate.mean);
    out += ',';
    out += format_double(r.aggregate.stdev);
    out += '\n';
  }
  return out;
}

}  // namespace hoax
