#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "hoax/error.hpp"
#include "hoax/logreg.hpp"
#include "hoax/synth.hpp"
#include "support/oracles.hpp"
#include "support/test_graphs.hpp"

using namespace hoax;
using hoax_test::hoax_post;
using hoax_test::sci_post;
using hoax_test::training;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::InvalidArgument;
}

LogRegConfig fixed_schedule(int epochs, double lambda) {
  return {.l2_lambda = lambda, .max_epochs = epochs, .tolerance = 1e-300, .learning_rate = 0.5};
}

}  // namespace

TEST(LogRegConfig, Validation) {
  EXPECT_NO_THROW(LogRegConfig{}.validate());
  EXPECT_EQ(code_of([] { LogRegConfig{.l2_lambda = -1}.validate(); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { LogRegConfig{.max_epochs = 0}.validate(); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { LogRegConfig{.tolerance = 0}.validate(); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { LogRegConfig{.learning_rate = 0}.validate(); }), ErrorCode::InvalidParams);
}

TEST(TrainLogReg, EmptyTrainingSet) {
  std::vector<PostRecord> posts{sci_post("p1")};
  std::vector<LikeRecord> likes{{"p1", "u1"}};
  auto g = build_graph(posts, likes);
  EXPECT_EQ(code_of([&] { train_logreg(g, {}); }), ErrorCode::EmptyTrainingSet);
}

TEST(TrainLogReg, DivergenceIsNonFiniteLoss) {
  std::vector<PostRecord> posts{sci_post("p1")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p1", "u2"}};
  auto g = build_graph(posts, likes);
  LogRegConfig config{.l2_lambda = 1.0, .learning_rate = 1e308};
  EXPECT_EQ(code_of([&] { train_logreg(g, training(g, {}, {"p1"}), config); }), ErrorCode::NonFiniteLoss);
}

TEST(TrainLogReg, SingleNonHoaxPostGrowsWeight) {
  std::vector<PostRecord> posts{sci_post("p1")};
  std::vector<LikeRecord> likes{{"p1", "u1"}};
  auto g = build_graph(posts, likes);
  auto set = training(g, {}, {"p1"});
  double previous = 0.0;
  for (int epochs : {1, 2, 5, 20, 100, 400}) {
    auto model = train_logreg(g, set, fixed_schedule(epochs, 0.0));
    const double w = model.weight("u1");
    EXPECT_GT(w, previous) << epochs;
    previous = w;
  }
}

TEST(TrainLogReg, SymmetricPairIsAntisymmetricEveryEpoch) {
  std::vector<PostRecord> posts{sci_post("p1"), hoax_post("p2")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p2", "u2"}};
  auto g = build_graph(posts, likes);
  auto set = training(g, {"p2"}, {"p1"});
  for (int epochs = 1; epochs <= 30; ++epochs) {
    auto model = train_logreg(g, set, fixed_schedule(epochs, 0.1));
    EXPECT_EQ(model.weight("u1"), -model.weight("u2")) << epochs;
    EXPECT_GT(model.weight("u1"), 0.0);
  }
}

TEST(TrainLogReg, UntrainedUserWeighsZero) {
  std::vector<PostRecord> posts{sci_post("p1"), hoax_post("p2"), sci_post("p3")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p2", "u2"}, {"p3", "u3"}};
  auto g = build_graph(posts, likes);
  auto model = train_logreg(g, training(g, {"p2"}, {"p1"}));
  EXPECT_EQ(model.weight("u3"), 0.0);
  EXPECT_EQ(model.weights.size(), 2u);
  auto p = predict(model, g, "p3");
  EXPECT_EQ(p.p, 0.5);
  EXPECT_EQ(p.label, Label::NonHoax);
}

TEST(Predict, ClosedFormSigmoid) {
  std::vector<PostRecord> posts{sci_post("p1"), sci_post("lonely")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p1", "u2"}};
  auto g = build_graph(posts, likes);
  LogRegModel model;
  model.weights = {{"u1", 2.0}, {"u2", -0.5}};
  auto p = predict(model, g, "p1");
  EXPECT_NEAR(p.p, 1.0 / (1.0 + std::exp(-1.5)), 1e-15);
  EXPECT_NEAR(p.p, 0.817574, 1e-6);
  EXPECT_EQ(p.label, Label::NonHoax);

  auto lonely = predict(model, g, "lonely");
  EXPECT_EQ(lonely.p, 0.5);
  EXPECT_EQ(lonely.label, Label::NonHoax);

  EXPECT_EQ(code_of([&] { predict(model, g, "nope"); }), ErrorCode::UnknownPostId);

  auto all = predict_all(model, g);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].p, p.p);
  auto csv = logreg_csv(g, all);
  EXPECT_EQ(csv, "post_id,p,label\nlonely,0.5,nonhoax\np1,0.817574476194,nonhoax\n");
}

TEST(Predict, NegativeScoreIsHoax) {
  std::vector<PostRecord> posts{sci_post("p1")};
  std::vector<LikeRecord> likes{{"p1", "u1"}};
  auto g = build_graph(posts, likes);
  LogRegModel model;
  model.weights = {{"u1", -1e-9}};
  EXPECT_EQ(predict(model, g, "p1").label, Label::Hoax);
}

TEST(ModelJson, RoundTrip) {
  LogRegModel model;
  model.weights = {{"a", 0.25}, {"b", -1.5}, {"c", 3e-20}};
  auto json = model_to_json(model);
  EXPECT_EQ(json, "{\n  \"a\": 0.25,\n  \"b\": -1.5,\n  \"c\": 3e-20\n}\n");
  auto back = model_from_json(json);
  EXPECT_EQ(back.weights, model.weights);
  EXPECT_EQ(code_of([] { model_from_json("[1,2]"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { model_from_json("{\"a\": \"x\"}"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { model_from_json("{"); }), ErrorCode::ParseError);
}

class LogRegRandom : public ::testing::TestWithParam<int> {};

TEST_P(LogRegRandom, GradientMatchesFiniteDifferences) {
  std::mt19937_64 gen(500 + GetParam());
  auto spec = hoax_test::random_graph(gen, 8, 8, 0.45);
  auto g = spec.build();
  auto set = hoax_test::random_training(gen, g, 8);
  if (set.empty()) set = training(g, {}, {g.post_id(0)});
  std::uniform_real_distribution<double> lambda_dist(0.0, 0.5), w_dist(-2.0, 2.0);
  const double lambda = lambda_dist(gen);
  LogRegObjective objective(g, set, lambda);

  std::vector<std::string> users;
  for (auto u : objective.active_users()) users.push_back(g.user_id(u));
  std::set<std::string> th, tn;
  for (auto i : set.hoax) th.insert(g.post_id(i));
  for (auto i : set.nonhoax) tn.insert(g.post_id(i));
  auto dense = hoax_test::dense_logreg(spec.posts, spec.likes, th, tn, users, lambda);

  std::vector<double> w(users.size());
  for (auto& v : w) v = w_dist(gen);
  std::vector<double> analytic(w.size());
  objective.gradient(w, analytic);
  auto numeric = dense.numeric_gradient(w);
  double diff = 0.0, scale = 0.0;
  for (std::size_t s = 0; s < w.size(); ++s) {
    diff = std::max(diff, std::abs(analytic[s] - numeric[s]));
    scale = std::max(scale, std::abs(numeric[s]));
  }
  EXPECT_LT(diff / std::max(scale, 1e-12), 1e-5);
  EXPECT_NEAR(objective.loss(w), dense.loss(w), 1e-12 * std::max(1.0, dense.loss(w)));
}

TEST_P(LogRegRandom, CurvatureBoundDominatesHessianDiagonal) {
  std::mt19937_64 gen(700 + GetParam());
  auto g = hoax_test::random_graph(gen, 8, 8, 0.45).build();
  auto set = hoax_test::random_training(gen, g, 8);
  if (set.empty()) set = training(g, {g.post_id(0)}, {});
  LogRegObjective objective(g, set, 0.01);
  auto bound = objective.curvature_bound();
  std::vector<double> w(objective.num_weights(), 0.0), gp(w.size()), gm(w.size());
  for (std::size_t s = 0; s < w.size(); ++s) {
    const double h = 1e-5;
    w[s] = h;
    objective.gradient(w, gp);
    w[s] = -h;
    objective.gradient(w, gm);
    w[s] = 0.0;
    EXPECT_LE((gp[s] - gm[s]) / (2 * h), bound[s] + 1e-6);
  }
}

TEST_P(LogRegRandom, LossNeverIncreases) {
  std::mt19937_64 gen(900 + GetParam());
  auto g = hoax_test::random_graph(gen, 8, 8, 0.45).build();
  auto set = hoax_test::random_training(gen, g, 8);
  if (set.empty()) set = training(g, {}, {g.post_id(0)});
  auto model = train_logreg(g, set);
  ASSERT_EQ(model.loss_history.size(), static_cast<std::size_t>(model.epochs_run) + 1);
  for (std::size_t k = 1; k < model.loss_history.size(); ++k)
    EXPECT_LE(model.loss_history[k], model.loss_history[k - 1]);
  EXPECT_TRUE(std::is_sorted(model.weights.begin(), model.weights.end()));
}

TEST_P(LogRegRandom, DisjointComponentsDoNotInterfere) {
  std::mt19937_64 gen(1100 + GetParam());
  auto a = hoax_test::random_graph(gen, 6, 6, 0.45, "a");
  auto b = hoax_test::random_graph(gen, 6, 6, 0.45, "b");
  auto ga = a.build(), gb = b.build(), joint = hoax_test::union_of(a, b).build();
  auto sa = training(ga, {}, {ga.post_id(0)});
  auto sb = training(gb, {gb.post_id(0)}, {});
  TrainingSet sj;
  sj.nonhoax.push_back(*joint.find_post(ga.post_id(0)));
  sj.hoax.push_back(*joint.find_post(gb.post_id(0)));
  const auto config = fixed_schedule(60, 0.01);
  auto ma = train_logreg(ga, sa, config);
  auto mb = train_logreg(gb, sb, config);
  auto mj = train_logreg(joint, normalized(joint, sj), config);
  EXPECT_EQ(mj.weights.size(), ma.weights.size() + mb.weights.size());
  for (const auto* m : {&ma, &mb})
    for (const auto& [user, w] : m->weights) EXPECT_NEAR(mj.weight(user), w, 1e-10) << user;
}

INSTANTIATE_TEST_SUITE_P(Seeds, LogRegRandom, ::testing::Range(0, 30));

TEST(TrainLogReg, ThreadCountDoesNotChangeBits) {
  auto g = generate_synthetic({.n_users = 20000, .seed = 9});
  TrainingSet set;
  for (PostIndex i = 0; i < g.num_posts(); i += 3) (g.label(i) == Label::Hoax ? set.hoax : set.nonhoax).push_back(i);
  LogRegConfig config{.max_epochs = 40};
  auto one = train_logreg(g, set, config, 1);
  auto many = train_logreg(g, set, config, 4);
  ASSERT_EQ(one.weights.size(), many.weights.size());
  EXPECT_EQ(one.epochs_run, many.epochs_run);
  for (std::size_t s = 0; s < one.weights.size(); ++s)
    ASSERT_EQ(std::bit_cast<std::uint64_t>(one.weights[s].second),
              std::bit_cast<std::uint64_t>(many.weights[s].second));
}
