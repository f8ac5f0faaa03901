#include "hoax/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hoax/error.hpp"
#include "hoax/random.hpp"

namespace hoax {

namespace {

std::string padded(const char* prefix, std::uint64_t value, std::uint64_t count) {
  const auto width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(value);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

/// Popularity-weighted choice among one class's posts.
class WeightedPosts {
 public:
  void add(PostIndex post, double weight) {
    posts_.push_back(post);
    total_ += weight;
    cumulative_.push_back(total_);
  }

  PostIndex draw(Rng& rng) const {
    const double x = rng.uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return posts_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

  std::size_t size() const { return posts_.size(); }

 private:
  std::vector<PostIndex> posts_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

// Yule-Simon(rho) as a geometric count whose success probability is e^-W,
// W ~ Exponential(rho).
std::uint64_t draw_like_count(double mean, Rng& rng, std::uint64_t cap) {
  if (mean <= 1.0) return 1;
  const double rho = mean / (mean - 1.0);
  const double w = -std::log1p(-rng.uniform()) / rho;
  const double fail = -std::expm1(-w);  // 1 - e^-W
  const double u = rng.uniform();
  if (fail <= 0.0) return 1;
  const double extra = std::floor(std::log1p(-u) / std::log(fail));
  if (!(extra < static_cast<double>(cap))) return cap;
  return std::min<std::uint64_t>(cap, 1 + static_cast<std::uint64_t>(extra));
}

}  // namespace

void SynthParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidParams, what); };
  if (n_pages_hoax < 1 || n_pages_nonhoax < 1) fail("each class needs at least one page");
  if (posts_per_page < 1) fail("posts_per_page must be at least 1");
  if (n_users < 1) fail("n_users must be at least 1");
  if (!(likes_per_user_mean >= 1.0) || !std::isfinite(likes_per_user_mean))
    fail("likes_per_user_mean must be >= 1");
  if (!(mixing_epsilon >= 0.0 && mixing_epsilon <= 1.0)) fail("mixing_epsilon must be in [0,1]");
  if (!(popularity_skew > 0.0) || !std::isfinite(popularity_skew)) fail("popularity_skew must be positive");
  if (!(hoax_popularity_multiplier > 0.0) || !std::isfinite(hoax_popularity_multiplier))
    fail("hoax_popularity_multiplier must be positive");
  const std::uint64_t n_posts =
      static_cast<std::uint64_t>(n_pages_hoax + std::uint64_t{n_pages_nonhoax}) * posts_per_page;
  if (n_posts > UINT32_MAX / 2) fail("too many posts");
}

LikeGraph generate_synthetic(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);

  const std::uint64_t n_hoax = std::uint64_t{params.n_pages_hoax} * params.posts_per_page;
  const std::uint64_t n_posts = n_hoax + std::uint64_t{params.n_pages_nonhoax} * params.posts_per_page;

  std::vector<PostRecord> posts;
  posts.reserve(n_posts);
  WeightedPosts classes[2];  // [0] hoax, [1] non-hoax
  for (std::uint64_t i = 0; i < n_posts; ++i) {
    const bool hoax = i < n_hoax;
    const std::uint64_t page = hoax ? i / params.posts_per_page : (i - n_hoax) / params.posts_per_page;
    posts.push_back({padded("p", i, n_posts),
                     hoax ? padded("hoaxpage_", page, params.n_pages_hoax)
                          : padded("scipage_", page, params.n_pages_nonhoax),
                     hoax ? Label::Hoax : Label::NonHoax});
    const double weight = std::pow(1.0 - rng.uniform(), -1.0 / params.popularity_skew);
    classes[hoax ? 0 : 1].add(static_cast<PostIndex>(i), weight);
  }

  const double hoax_mass = static_cast<double>(n_hoax) * params.hoax_popularity_multiplier;
  const double p_home_hoax = hoax_mass / (hoax_mass + static_cast<double>(n_posts - n_hoax));

  std::vector<LikeRecord> likes;
  std::vector<PostIndex> mine;
  for (std::uint32_t u = 0; u < params.n_users; ++u) {
    const std::string user = padded("u", u, params.n_users);
    const int home = rng.uniform() < p_home_hoax ? 0 : 1;
    const auto count = draw_like_count(params.likes_per_user_mean, rng, n_posts);
    mine.clear();
    for (std::uint64_t k = 0; k < count; ++k) {
      const int cls = rng.uniform() < params.mixing_epsilon ? 1 - home : home;
      for (int attempt = 0; attempt < 16; ++attempt) {
        const PostIndex post = classes[cls].draw(rng);
        if (std::find(mine.begin(), mine.end(), post) != mine.end()) continue;
        mine.push_back(post);
        likes.push_back({posts[post].post_id, user});
        break;
      }
    }
  }
  return build_graph(posts, likes);
}

}  // namespace hoax
