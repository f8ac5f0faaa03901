#pragma once

// Reference evaluations written directly from the model definitions, keyed by
// string ids and sharing no code with the library.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hoax/graph.hpp"

namespace hoax_test {

struct HarmonicOracleInput {
  std::vector<hoax::PostRecord> posts;
  std::vector<hoax::LikeRecord> likes;
  std::set<std::string> train_hoax;
  std::set<std::string> train_nonhoax;
  double a = 5.01, b = 5.0, a_prime = 5.0, b_prime = 5.0;
  int iterations = 5;
};

/// Final q of every post.
inline std::map<std::string, double> harmonic_oracle(const HarmonicOracleInput& in) {
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& like : in.likes) edges.insert({like.post_id, like.user_id});
  std::set<std::string> users;
  for (const auto& [p, u] : edges) users.insert(u);

  std::map<std::string, double> q_post;
  for (const auto& post : in.posts) {
    double q = 0.0;
    if (in.train_hoax.count(post.post_id)) q = -1.0;
    if (in.train_nonhoax.count(post.post_id)) q = 1.0;
    q_post[post.post_id] = q;
  }
  std::map<std::string, double> q_user;

  for (int it = 0; it < in.iterations; ++it) {
    for (const auto& u : users) {
      double alpha = in.a;
      double beta = in.b;
      for (const auto& [p, v] : edges) {
        if (v != u) continue;
        const double q = q_post[p];
        if (q > 0) alpha += q;
        if (q < 0) beta -= q;
      }
      q_user[u] = (alpha - beta) / (alpha + beta);
    }
    std::map<std::string, double> next = q_post;
    for (const auto& post : in.posts) {
      const auto& p = post.post_id;
      if (in.train_hoax.count(p) || in.train_nonhoax.count(p)) continue;
      double alpha = in.a_prime;
      double beta = in.b_prime;
      for (const auto& [e, v] : edges) {
        if (e != p) continue;
        const double q = q_user[v];
        if (q > 0) alpha += q;
        if (q < 0) beta -= q;
      }
      next[p] = (alpha - beta) / (alpha + beta);
    }
    q_post = next;
  }
  return q_post;
}

/// Dense logistic-regression loss over training posts:
/// sum of cross-entropy terms with p = 1/(1+e^-y), plus lambda/2 |w|^2.
struct DenseLogReg {
  std::vector<std::vector<double>> x;  // rows: training posts, cols: users
  std::vector<int> t;                  // 1 = non-hoax
  double lambda = 0.0;

  double loss(const std::vector<double>& w) const {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double y = 0.0;
      for (std::size_t u = 0; u < w.size(); ++u) y += x[i][u] * w[u];
      const double p = 1.0 / (1.0 + std::exp(-y));
      total -= t[i] ? std::log(p) : std::log(1.0 - p);
    }
    double norm = 0.0;
    for (double v : w) norm += v * v;
    return total + 0.5 * lambda * norm;
  }

  /// Central differences with step h.
  std::vector<double> numeric_gradient(std::vector<double> w, double h = 1e-5) const {
    std::vector<double> g(w.size());
    for (std::size_t u = 0; u < w.size(); ++u) {
      const double keep = w[u];
      w[u] = keep + h;
      const double up = loss(w);
      w[u] = keep - h;
      const double down = loss(w);
      w[u] = keep;
      g[u] = (up - down) / (2 * h);
    }
    return g;
  }
};

/// Builds the dense problem over `users` (column order) from raw records.
inline DenseLogReg dense_logreg(const std::vector<hoax::PostRecord>& posts,
                                const std::vector<hoax::LikeRecord>& likes,
                                const std::set<std::string>& train_hoax,
                                const std::set<std::string>& train_nonhoax,
                                const std::vector<std::string>& users, double lambda) {
  DenseLogReg problem;
  problem.lambda = lambda;
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& like : likes) edges.insert({like.post_id, like.user_id});
  for (const auto& post : posts) {
    const bool hoax = train_hoax.count(post.post_id) > 0;
    const bool sci = train_nonhoax.count(post.post_id) > 0;
    if (!hoax && !sci) continue;
    std::vector<double> row(users.size(), 0.0);
    for (std::size_t u = 0; u < users.size(); ++u)
      if (edges.count({post.post_id, users[u]})) row[u] = 1.0;
    problem.x.push_back(row);
    problem.t.push_back(sci ? 1 : 0);
  }
  return problem;
}

}  // namespace hoax_test
