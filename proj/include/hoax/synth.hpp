#pragma once

#include <cstdint>

#include "hoax/graph.hpp"

namespace hoax {

/// Parameters of the synthetic polarized like-graph. Defaults are the desk
/// calibration: 20 pages of 100 posts, 10,000 users.
struct SynthParams {
  std::uint32_t n_pages_hoax = 10;
  std::uint32_t n_pages_nonhoax = 10;
  std::uint32_t posts_per_page = 100;
  std::uint32_t n_users = 10000;
  /// Mean of the per-user like count (Yule-Simon with rho = m / (m - 1);
  /// m == 1 gives exactly one like per user).
  double likes_per_user_mean = 2.6;
  /// Probability that a like lands on the class opposite the user's home class.
  double mixing_epsilon = 0.05;
  /// Pareto exponent of per-post popularity weights.
  double popularity_skew = 1.5;
  /// Hoax class popularity mass relative to non-hoax, per post.
  double hoax_popularity_multiplier = 2.4;
  std::uint64_t seed = 1;

  /// Throws Error{InvalidParams}.
  void validate() const;
};

/// Draw order (defines the output for a seed): one popularity weight per post
/// in post order; then per user: home class, like count, and each like
/// (class, then post by popularity, redrawing duplicates up to 16 times
/// before dropping that like). Users ending with no likes are dropped.
/// Post ids are p<index>, pages hoaxpage_<k> / scipage_<k>, users u<index>,
/// zero-padded so lexicographic order matches generation order.
LikeGraph generate_synthetic(const SynthParams& params);

}  // namespace hoax
