#include "hoax/logreg.hpp"

#include <algorithm>
#include <cmath>

#include "hoax/error.hpp"
#include "hoax/format.hpp"
#include "hoax/ingest.hpp"
#include "json_out.hpp"
#include "parallel.hpp"

namespace hoax {

namespace {

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// dL/dy for one post. Written so that (y, non-hoax) and (-y, hoax) give
// exactly opposite values.
double residual(double y, bool nonhoax) { return nonhoax ? -sigmoid(-y) : sigmoid(y); }

double post_loss(double y, bool nonhoax) { return softplus(nonhoax ? -y : y); }

}  // namespace

void LogRegConfig::validate() const {
  if (!(l2_lambda >= 0.0) || !std::isfinite(l2_lambda))
    throw Error(ErrorCode::InvalidParams, "lambda must be a finite non-negative number");
  if (max_epochs < 1) throw Error(ErrorCode::InvalidParams, "epochs must be at least 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw Error(ErrorCode::InvalidParams, "learning rate must be positive");
}

LogRegObjective::LogRegObjective(const LikeGraph& g, const TrainingSet& training,
                                 double l2_lambda)
    : lambda_(l2_lambda) {
  const TrainingSet set = normalized(g, training);
  const auto mask = training_mask(g.num_posts(), set);

  std::vector<std::uint32_t> slot_of(g.num_users(), UINT32_MAX);
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    if (!mask[i]) continue;
    for (UserIndex u : g.likers(i)) slot_of[u] = 0;
  }
  for (UserIndex u = 0; u < g.num_users(); ++u) {
    if (slot_of[u] == 0) {
      slot_of[u] = static_cast<std::uint32_t>(active_users_.size());
      active_users_.push_back(u);
    }
  }

  post_offsets_.push_back(0);
  std::vector<std::size_t> slot_counts(active_users_.size() + 1, 0);
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    if (!mask[i]) continue;
    posts_.push_back(i);
    target_.push_back(mask[i] == 2 ? 1 : 0);
    for (UserIndex u : g.likers(i)) {
      post_slots_.push_back(slot_of[u]);
      ++slot_counts[slot_of[u] + 1];
    }
    post_offsets_.push_back(post_slots_.size());
  }

  slot_offsets_ = slot_counts;
  for (std::size_t s = 1; s < slot_offsets_.size(); ++s) slot_offsets_[s] += slot_offsets_[s - 1];
  slot_posts_.resize(post_slots_.size());
  std::vector<std::size_t> cursor(slot_offsets_.begin(), slot_offsets_.end() - 1);
  for (std::uint32_t k = 0; k < posts_.size(); ++k)
    for (std::size_t e = post_offsets_[k]; e < post_offsets_[k + 1]; ++e)
      slot_posts_[cursor[post_slots_[e]]++] = k;
}

void LogRegObjective::scores(std::span<const double> w, std::span<double> y,
                             unsigned threads) const {
  detail::parallel_for(posts_.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      double sum = 0.0;
      for (std::size_t e = post_offsets_[k]; e < post_offsets_[k + 1]; ++e)
        sum += w[post_slots_[e]];
      y[k] = sum;
    }
  });
}

double LogRegObjective::loss(std::span<const double> w, unsigned threads) const {
  std::vector<double> y(posts_.size());
  scores(w, y, threads);
  double data = 0.0;
  for (std::size_t k = 0; k < posts_.size(); ++k) data += post_loss(y[k], target_[k] != 0);
  double norm = 0.0;
  for (double v : w) norm += v * v;
  return data + 0.5 * lambda_ * norm;
}

void LogRegObjective::gradient(std::span<const double> w, std::span<double> out,
                               unsigned threads) const {
  std::vector<double> r(posts_.size());
  scores(w, r, threads);
  for (std::size_t k = 0; k < posts_.size(); ++k) r[k] = residual(r[k], target_[k] != 0);
  detail::parallel_for(active_users_.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      double sum = 0.0;
      for (std::size_t e = slot_offsets_[s]; e < slot_offsets_[s + 1]; ++e)
        sum += r[slot_posts_[e]];
      out[s] = sum + lambda_ * w[s];
    }
  });
}

std::vector<double> LogRegObjective::curvature_bound() const {
  std::vector<double> d(active_users_.size(), 0.0);
  for (std::size_t s = 0; s < d.size(); ++s) {
    std::size_t sum = 0;
    for (std::size_t e = slot_offsets_[s]; e < slot_offsets_[s + 1]; ++e) {
      const auto k = slot_posts_[e];
      sum += post_offsets_[k + 1] - post_offsets_[k];
    }
    d[s] = 0.25 * static_cast<double>(sum) + lambda_;
  }
  return d;
}

double LogRegModel::weight(std::string_view user_id) const {
  auto it = std::lower_bound(weights.begin(), weights.end(), user_id,
                             [](const auto& entry, std::string_view id) { return entry.first < id; });
  return (it != weights.end() && it->first == user_id) ? it->second : 0.0;
}

LogRegModel train_logreg(const LikeGraph& g, const TrainingSet& training,
                         const LogRegConfig& config, unsigned threads) {
  config.validate();
  if (training.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no training posts");
  const LogRegObjective objective(g, training, config.l2_lambda);

  const std::size_t n = objective.num_weights();
  std::vector<double> step = objective.curvature_bound();
  for (double& s : step) s = config.learning_rate / std::max(1.0, s);

  std::vector<double> w(n, 0.0), next(n), grad(n);
  LogRegModel model;
  model.config = config;
  double current = objective.loss(w, threads);
  model.loss_history.push_back(current);

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    objective.gradient(w, grad, threads);
    for (std::size_t s = 0; s < n; ++s) next[s] = w[s] - step[s] * grad[s];
    const double loss = objective.loss(next, threads);
    if (!std::isfinite(loss))
      throw Error(ErrorCode::NonFiniteLoss, "loss diverged at epoch " + std::to_string(epoch + 1));
    if (loss > current) break;
    w.swap(next);
    model.loss_history.push_back(loss);
    ++model.epochs_run;
    const double change = current - loss;
    current = loss;
    if (change < config.tolerance) break;
  }

  model.weights.reserve(n);
  const auto users = objective.active_users();
  for (std::size_t s = 0; s < n; ++s) model.weights.emplace_back(g.user_id(users[s]), w[s]);
  return model;
}

namespace {

// Model weight for every user of g, matched by id.
std::vector<double> dense_weights(const LogRegModel& model, const LikeGraph& g) {
  std::vector<double> dense(g.num_users(), 0.0);
  auto it = model.weights.begin();
  for (UserIndex u = 0; u < g.num_users() && it != model.weights.end(); ++u) {
    const auto& id = g.user_id(u);
    while (it != model.weights.end() && it->first < id) ++it;
    if (it != model.weights.end() && it->first == id) dense[u] = it->second;
  }
  return dense;
}

Prediction from_score(double y) { return {sigmoid(y), y >= 0.0 ? Label::NonHoax : Label::Hoax}; }

}  // namespace

Prediction predict(const LogRegModel& model, const LikeGraph& g, PostIndex post) {
  if (post >= g.num_posts())
    throw Error(ErrorCode::UnknownPostId, "post index " + std::to_string(post));
  double y = 0.0;
  for (UserIndex u : g.likers(post)) y += model.weight(g.user_id(u));
  return from_score(y);
}

Prediction predict(const LogRegModel& model, const LikeGraph& g, std::string_view post_id) {
  auto post = g.find_post(post_id);
  if (!post) throw Error(ErrorCode::UnknownPostId, std::string(post_id));
  return predict(model, g, *post);
}

std::vector<Prediction> predict_all(const LogRegModel& model, const LikeGraph& g,
                                    unsigned threads) {
  const auto dense = dense_weights(model, g);
  std::vector<Prediction> out(g.num_posts());
  detail::parallel_for(g.num_posts(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double y = 0.0;
      for (UserIndex u : g.likers(static_cast<PostIndex>(i))) y += dense[u];
      out[i] = from_score(y);
    }
  });
  return out;
}

std::string logreg_csv(const LikeGraph& g, std::span<const Prediction> predictions) {
  std::string out = "post_id,p,label\n";
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    out += g.post_id(i);
    out += ',';
    out += format_double(predictions[i].p);
    out += ',';
    out += to_string(predictions[i].label);
    out += '\n';
  }
  return out;
}

std::string model_to_json(const LogRegModel& model) {
  detail::ordered_json j = detail::ordered_json::object();
  for (const auto& [user, w] : model.weights) j[user] = w;
  return detail::dump_json(j);
}

LogRegModel model_from_json(std::string_view text) {
  detail::ordered_json j;
  try {
    j = detail::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("model: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "model: expected a JSON object");
  LogRegModel model;
  for (const auto& [user, w] : j.items()) {
    if (!is_valid_id(user)) throw Error(ErrorCode::ParseError, "model: invalid user id '" + user + "'");
    if (!w.is_number()) throw Error(ErrorCode::ParseError, "model: weight of '" + user + "' is not a number");
    model.weights.emplace_back(user, w.get<double>());
  }
  std::sort(model.weights.begin(), model.weights.end());
  return model;
}

}  // namespace hoax
