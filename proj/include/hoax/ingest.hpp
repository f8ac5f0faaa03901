#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hoax/graph.hpp"
#include "hoax/training.hpp"

namespace hoax {

// CSV schemas (UTF-8, header row, comma separated, no quoting):
//   posts.csv  post_id,page_id,label    label in {hoax, nonhoax}
//   likes.csv  post_id,user_id
//   train.csv  post_id,label
// Ids must match [A-Za-z0-9_-]+. Blank lines are ignored; a trailing '\r'
// is stripped. Line numbers in errors are 1-based and count the header.

bool is_valid_id(std::string_view id) noexcept;

std::vector<PostRecord> parse_posts_csv(std::istream& in);
std::vector<LikeRecord> parse_likes_csv(std::istream& in);

/// Throws Error{ParseError} (including unreadable files), and whatever
/// build_graph throws.
LikeGraph load_dataset(const std::filesystem::path& posts_path,
                       const std::filesystem::path& likes_path);

/// Reads a train.csv against g. Repeated rows with the same label collapse;
/// conflicting labels raise OverlappingTrainingSets.
TrainingSet parse_training_csv(std::istream& in, const LikeGraph& g);
TrainingSet load_training(const std::filesystem::path& path, const LikeGraph& g);

/// Serializes in the ingest schema; rows ascending by id.
std::string posts_csv(const LikeGraph& g);
std::string likes_csv(const LikeGraph& g);

using Histogram = std::map<std::uint64_t, std::uint64_t>;

struct LikesSummary {
  double mean = 0.0;
  std::uint64_t median = 0;  // lower middle for even counts
  std::uint64_t max = 0;
};

struct UserCategoryCounts {
  std::uint64_t hoax_only = 0;
  std::uint64_t nonhoax_only = 0;
  std::uint64_t mixed = 0;
};

struct DatasetStats {
  std::uint64_t n_posts = 0;
  std::uint64_t n_users = 0;
  std::uint64_t n_likes = 0;
  std::uint64_t n_hoax = 0;
  std::uint64_t n_nonhoax = 0;
  Histogram likes_per_post_hoax;
  Histogram likes_per_post_nonhoax;
  Histogram likes_per_user;
  LikesSummary likes_per_post_hoax_summary;
  LikesSummary likes_per_post_nonhoax_summary;
  double single_like_user_fraction = 0.0;
  /// Among users with at least two likes.
  UserCategoryCounts user_categories;
  std::vector<std::string> pages;
  /// (a, b) = users who liked a post of page a and a post of page b.
  std::vector<std::vector<std::uint64_t>> page_couser_matrix;
};

DatasetStats compute_stats(const LikeGraph& g);

/// JSON with a fixed key order; ratios carry six fractional digits.
std::string stats_json(const DatasetStats& stats);

}  // namespace hoax
