#include "hoax/training.hpp"

#include <algorithm>
#include <string>

#include "hoax/error.hpp"

namespace hoax {

namespace {

void sort_unique(std::vector<PostIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TrainingSet normalized(const LikeGraph& g, TrainingSet set) {
  sort_unique(set.hoax);
  sort_unique(set.nonhoax);
  for (const auto* list : {&set.hoax, &set.nonhoax}) {
    if (!list->empty() && list->back() >= g.num_posts())
      throw Error(ErrorCode::UnknownPostId,
                  "post index " + std::to_string(list->back()));
  }
  std::vector<PostIndex> both;
  std::set_intersection(set.hoax.begin(), set.hoax.end(), set.nonhoax.begin(),
                        set.nonhoax.end(), std::back_inserter(both));
  if (!both.empty())
    throw Error(ErrorCode::OverlappingTrainingSets, g.post_id(both.front()));
  return set;
}

std::vector<std::uint8_t> training_mask(std::size_t n_posts,
                                        const TrainingSet& set) {
  std::vector<std::uint8_t> mask(n_posts, 0);
  for (PostIndex i : set.hoax) mask[i] = 1;
  for (PostIndex i : set.nonhoax) mask[i] = 2;
  return mask;
}

}  // namespace hoax
