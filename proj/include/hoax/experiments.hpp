#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hoax/graph.hpp"
#include "hoax/harmonic.hpp"
#include "hoax/logreg.hpp"
#include "hoax/training.hpp"

namespace hoax {

enum class Protocol { Sweep, KFold, OnePageOut, HalfPagesOut };
enum class ClassifierKind { Harmonic, LogReg };

std::string_view to_string(Protocol protocol) noexcept;
std::string_view to_string(ClassifierKind kind) noexcept;

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::Harmonic;
  HarmonicParams harmonic;
  LogRegConfig logreg;
};

/// Predicted label for every post of g.
std::vector<Label> classify(const LikeGraph& g, const TrainingSet& training,
                            const ClassifierConfig& config, unsigned threads = 1);

struct TrainingSplit {
  TrainingSet train;
  std::vector<PostIndex> eval;  // ascending
};

/// Builds a split whose training labels are the ground truth of g.
TrainingSplit split_by_truth(const LikeGraph& g, std::span<const PostIndex> train_posts);

/// Throws std::logic_error unless train.hoax, train.nonhoax and eval partition
/// the posts of g and training labels match the ground truth.
void check_partition(const LikeGraph& g, const TrainingSplit& split);

/// Fraction of `over` where predicted == truth (both indexed by post).
/// Throws Error{EmptyEvaluationSet}.
double accuracy(std::span<const Label> predicted, std::span<const Label> truth,
                std::span<const PostIndex> over);

/// round(fraction * n_posts), halves rounded up. Throws
/// Error{InvalidArgument} unless 0 < fraction < 1, Error{FractionTooSmall}
/// when the count rounds to zero.
std::size_t training_count(std::size_t n_posts, double fraction);

/// Uniform sample of training_count() posts, without replacement.
TrainingSplit random_fraction_split(const LikeGraph& g, double fraction, std::uint64_t seed);

struct RunResult {
  std::size_t index = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> train_fraction;  // |train| / n_posts
  std::vector<std::string> held_out_pages;
  std::size_t n_train = 0;
  std::size_t n_eval = 0;
  double accuracy = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double stdev = 0.0;           // n - 1 denominator
  double stderr_of_mean = 0.0;  // stdev / sqrt(n)
  std::size_t n_runs = 0;
  bool degenerate = false;      // n == 1, stdev reported as 0
};

Aggregate aggregate(std::span<const double> values);

struct ExperimentReport {
  Protocol protocol = Protocol::Sweep;
  ClassifierConfig classifier;
  std::optional<double> requested_fraction;  // sweep only
  std::vector<RunResult> runs;               // ordered by index
  Aggregate aggregate;
};

// Runs are independent and spread over `threads` workers; each run uses its
// own seed (base_seed + run index), so reports do not depend on the thread
// count.

/// For each fraction, `runs` random splits with seeds base_seed + r.
std::vector<ExperimentReport> sweep(const LikeGraph& g, const ClassifierConfig& config,
                                    std::span<const double> fractions, int runs,
                                    std::uint64_t base_seed, unsigned threads = 1);

/// One shuffle with `seed`, then k folds of near-equal size (the first n % k
/// folds get one extra post). Throws Error{InvalidArgument} for k < 2 and
/// Error{TooFewPosts} when n_posts < k.
ExperimentReport kfold(const LikeGraph& g, const ClassifierConfig& config, int k,
                       std::uint64_t seed, unsigned threads = 1);

/// Each page in turn is the evaluation set. Throws Error{SinglePage}.
ExperimentReport one_page_out(const LikeGraph& g, const ClassifierConfig& config,
                              unsigned threads = 1);

/// Each run holds out floor(n_pages / 2) pages sampled with seed
/// base_seed + r. Throws Error{SinglePage}.
ExperimentReport half_pages_out(const LikeGraph& g, const ClassifierConfig& config,
                                int runs, std::uint64_t base_seed, unsigned threads = 1);

struct ReportContext {
  std::string dataset = "complete";
  std::optional<std::uint64_t> base_seed;
};

/// Deterministic JSON: fixed key order, floats via format_double.
std::string reports_json(std::span<const ExperimentReport> reports, const ReportContext& context);

/// Plot-ready CSV `fraction,mean,stdev`, one row per report. Outside sweeps
/// the fraction column is the mean training fraction of the runs.
std::string reports_csv(std::span<const ExperimentReport> reports);

}  // namespace hoax
