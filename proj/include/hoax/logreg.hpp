#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hoax/graph.hpp"
#include "hoax/training.hpp"

namespace hoax {

struct LogRegConfig {
  double l2_lambda = 1e-4;
  int max_epochs = 500;
  double tolerance = 1e-8;
  double learning_rate = 0.5;

  void validate() const;
};

/// Regularized cross-entropy over the training posts, with one weight per
/// user who liked at least one training post ("active" users). Features are
/// the binary likes; there is no intercept.
///
///   L(w) = sum_i softplus(t_i ? -y_i : y_i) + lambda/2 |w|^2,  y_i = sum_{u in likers(i)} w_u
///
/// with t_i = 1 for non-hoax. Every reduction runs in ascending index order,
/// so results are bitwise independent of the thread count.
class LogRegObjective {
 public:
  LogRegObjective(const LikeGraph& g, const TrainingSet& training, double l2_lambda);

  std::size_t num_weights() const noexcept { return active_users_.size(); }
  std::size_t num_training_posts() const noexcept { return posts_.size(); }

  /// Graph user index of each weight slot, ascending.
  std::span<const UserIndex> active_users() const noexcept { return active_users_; }

  double loss(std::span<const double> w, unsigned threads = 1) const;
  void gradient(std::span<const double> w, std::span<double> out,
                unsigned threads = 1) const;

  /// Diagonal d with Hessian <= diag(d) everywhere:
  /// d_u = 1/4 * sum_{i in train, u likes i} |likers(i)| + lambda.
  std::vector<double> curvature_bound() const;

 private:
  void scores(std::span<const double> w, std::span<double> y, unsigned threads) const;

  double lambda_;
  std::vector<UserIndex> active_users_;
  std::vector<PostIndex> posts_;      // training posts, ascending
  std::vector<std::uint8_t> target_;  // 1 = non-hoax
  std::vector<std::size_t> post_offsets_;
  std::vector<std::uint32_t> post_slots_;  // weight slots per training post
  std::vector<std::size_t> slot_offsets_;
  std::vector<std::uint32_t> slot_posts_;  // training-post positions per slot
};

struct LogRegModel {
  /// Users seen in training, sorted by id. Everyone else weighs 0.
  std::vector<std::pair<std::string, double>> weights;
  LogRegConfig config;
  int epochs_run = 0;
  /// Loss before training and after every accepted epoch.
  std::vector<double> loss_history;

  double weight(std::string_view user_id) const;
};

/// Full-batch gradient descent from w = 0. Each weight moves by
/// learning_rate / max(1, curvature_bound) times its gradient component,
/// which keeps the loss non-increasing for learning_rate <= 2. Stops after
/// max_epochs, when an epoch changes the loss by less than tolerance, or when
/// an epoch would raise the loss (that step is discarded).
/// Throws Error{EmptyTrainingSet} and Error{NonFiniteLoss}.
LogRegModel train_logreg(const LikeGraph& g, const TrainingSet& training,
                         const LogRegConfig& config = {}, unsigned threads = 1);

struct Prediction {
  double p = 0.5;  // probability of non-hoax
  Label label = Label::NonHoax;
};

/// y = sum of liker weights, p = 1/(1+e^-y), non-hoax iff y >= 0.
Prediction predict(const LogRegModel& model, const LikeGraph& g, PostIndex post);
Prediction predict(const LogRegModel& model, const LikeGraph& g,
                   std::string_view post_id);
std::vector<Prediction> predict_all(const LogRegModel& model, const LikeGraph& g,
                                    unsigned threads = 1);

/// CSV `post_id,p,label`, ascending post id.
std::string logreg_csv(const LikeGraph& g, std::span<const Prediction> predictions);

/// Flat JSON object user_id -> weight, keys ascending.
std::string model_to_json(const LogRegModel& model);
LogRegModel model_from_json(std::string_view text);

}  // namespace hoax
