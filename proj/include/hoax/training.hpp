#pragma once

#include <vector>

#include "hoax/graph.hpp"

namespace hoax {

/// Posts with revealed ground truth. Both lists are sorted ascending.
struct TrainingSet {
  std::vector<PostIndex> hoax;
  std::vector<PostIndex> nonhoax;

  bool empty() const noexcept { return hoax.empty() && nonhoax.empty(); }
  std::size_t size() const noexcept { return hoax.size() + nonhoax.size(); }
};

/// Sorts and deduplicates both lists, then checks them against g.
/// Throws Error{UnknownPostId} for an index outside g and
/// Error{OverlappingTrainingSets} when a post is in both lists.
TrainingSet normalized(const LikeGraph& g, TrainingSet set);

/// Per-post mask: 0 = not in training, 1 = hoax, 2 = nonhoax.
std::vector<std::uint8_t> training_mask(std::size_t n_posts,
                                        const TrainingSet& set);

}  // namespace hoax
