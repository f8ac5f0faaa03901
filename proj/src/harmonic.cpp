#include "hoax/harmonic.hpp"

#include "hoax/error.hpp"
#include "hoax/format.hpp"
#include "parallel.hpp"

namespace hoax {

namespace {

// alpha = prior_pos + sum of positive q, beta = prior_neg - sum of negative q,
// accumulated in ascending neighbour order.
template <class Neighbours>
NodeBelief accumulate(const Neighbours& neighbours,
                      const std::vector<NodeBelief>& source, double prior_pos,
                      double prior_neg) {
  double pos = 0.0;
  double neg = 0.0;
  for (auto v : neighbours) {
    const double q = source[v].q;
    if (q > 0.0) pos += q;
    else if (q < 0.0) neg += q;
  }
  NodeBelief b;
  b.alpha = prior_pos + pos;
  b.beta = prior_neg - neg;
  b.q = (b.alpha - b.beta) / (b.alpha + b.beta);
  return b;
}

}  // namespace

void HarmonicParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !(a_prime > 0.0) || !(b_prime > 0.0))
    throw Error(ErrorCode::InvalidParams, "harmonic constants must be positive");
  if (iterations < 1)
    throw Error(ErrorCode::InvalidParams, "iterations must be at least 1");
}

HarmonicState init_state(const LikeGraph& g, const TrainingSet& training) {
  HarmonicState state;
  state.training = normalized(g, training);
  state.pinned = training_mask(g.num_posts(), state.training);
  state.posts.assign(g.num_posts(), NodeBelief{});
  state.users.assign(g.num_users(), NodeBelief{});
  for (PostIndex i : state.training.hoax) state.posts[i].q = -1.0;
  for (PostIndex i : state.training.nonhoax) state.posts[i].q = 1.0;
  return state;
}

void user_update(HarmonicState& state, const LikeGraph& g,
                 const HarmonicParams& params, unsigned threads) {
  detail::parallel_for(g.num_users(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      state.users[u] = accumulate(g.liked_posts(static_cast<UserIndex>(u)),
                                  state.posts, params.a, params.b);
    }
  });
}

void post_update(HarmonicState& state, const LikeGraph& g,
                 const HarmonicParams& params, unsigned threads) {
  detail::parallel_for(g.num_posts(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (state.pinned[i]) continue;
      state.posts[i] = accumulate(g.likers(static_cast<PostIndex>(i)), state.users,
                                  params.a_prime, params.b_prime);
    }
  });
}

std::vector<PostScore> run_harmonic(const LikeGraph& g, const TrainingSet& training,
                                    const HarmonicParams& params, unsigned threads) {
  params.validate();
  HarmonicState state = init_state(g, training);
  for (int k = 0; k < params.iterations; ++k) {
    user_update(state, g, params, threads);
    post_update(state, g, params, threads);
  }
  std::vector<PostScore> scores(g.num_posts());
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = {state.posts[i].q, classify_score(state.posts[i].q)};
  return scores;
}

std::string harmonic_csv(const LikeGraph& g, std::span<const PostScore> scores) {
  std::string out = "post_id,q,label\n";
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    out += g.post_id(i);
    out += ',';
    out += format_double(scores[i].q);
    out += ',';
    out += to_string(scores[i].label);
    out += '\n';
  }
  return out;
}

}  // namespace hoax
