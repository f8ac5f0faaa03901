#pragma once

#include <span>
#include <string>
#include <vector>

#include "hoax/graph.hpp"
#include "hoax/training.hpp"

namespace hoax {

/// Prior strengths of the harmonic belief updates. A/B weigh the evidence
/// needed to characterize a user, A'/B' (a_prime/b_prime) the same for posts.
/// The defaults give users a very weak a-priori lean towards non-hoax and
/// posts a symmetric prior.
struct HarmonicParams {
  double a = 5.01;
  double b = 5.0;
  double a_prime = 5.0;
  double b_prime = 5.0;
  int iterations = 5;

  /// Throws Error{InvalidParams} unless all constants are > 0 and
  /// iterations >= 1.
  void validate() const;
};

/// Beta-distribution parameters of a node and q = (alpha - beta) / (alpha + beta).
/// q > 0 leans non-hoax, q < 0 leans hoax.
struct NodeBelief {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 0.0;
};

struct HarmonicState {
  std::vector<NodeBelief> posts;
  std::vector<NodeBelief> users;
  TrainingSet training;
  /// training_mask() of `training`; pinned posts never change.
  std::vector<std::uint8_t> pinned;
};

/// q = -1 on training hoax posts, +1 on training non-hoax posts, 0 elsewhere.
HarmonicState init_state(const LikeGraph& g, const TrainingSet& training);

/// Recomputes every user's belief from the current post q values.
void user_update(HarmonicState& state, const LikeGraph& g,
                 const HarmonicParams& params, unsigned threads = 1);

/// Recomputes every non-training post's belief from the current user q values.
void post_update(HarmonicState& state, const LikeGraph& g,
                 const HarmonicParams& params, unsigned threads = 1);

struct PostScore {
  double q = 0.0;
  Label label = Label::NonHoax;
};

/// Hoax iff q < 0; a zero score is non-hoax.
inline Label classify_score(double q) noexcept {
  return q < 0.0 ? Label::Hoax : Label::NonHoax;
}

/// init_state followed by `iterations` rounds of user_update then post_update.
/// Returns a score for every post, training posts included.
std::vector<PostScore> run_harmonic(const LikeGraph& g, const TrainingSet& training,
                                    const HarmonicParams& params = {},
                                    unsigned threads = 1);

/// CSV `post_id,q,label`, ascending post id, q with up to 12 significant digits.
std::string harmonic_csv(const LikeGraph& g, std::span<const PostScore> scores);

}  // namespace hoax
