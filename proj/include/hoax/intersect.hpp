#pragma once

#include <cstdint>
#include <string>

#include "hoax/graph.hpp"

namespace hoax {

struct IntersectionOptions {
  /// Also keep likes on retained posts from users who are not mixed.
  bool keep_outside_likes = false;
};

struct IntersectionReport {
  LikeGraph graph;
  /// Users of `graph` with exactly two likes there, one per class.
  std::uint64_t n_straddlers = 0;
  double straddler_fraction = 0.0;

  bool empty() const noexcept { return graph.num_users() == 0; }
};

/// Keeps the users who liked at least one hoax and one non-hoax post, and the
/// posts they liked. An input with no mixed user yields an empty graph.
IntersectionReport build_intersection(const LikeGraph& g,
                                      IntersectionOptions options = {});

std::string intersection_json(const IntersectionReport& report);

}  // namespace hoax
