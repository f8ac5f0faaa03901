#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hoax/error.hpp"
#include "hoax/graph.hpp"
#include "support/test_graphs.hpp"

using namespace hoax;
using hoax_test::hoax_post;
using hoax_test::sci_post;

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

std::set<std::pair<std::string, std::string>> like_set(const LikeGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& like : g.like_records()) out.insert({like.post_id, like.user_id});
  return out;
}

}  // namespace

TEST(BuildGraph, SinglePostNoLikes) {
  std::vector<PostRecord> posts{sci_post("p1")};
  auto g = build_graph(posts, {});
  EXPECT_EQ(g.num_posts(), 1u);
  EXPECT_EQ(g.num_users(), 0u);
  EXPECT_EQ(g.num_likes(), 0u);
  EXPECT_TRUE(g.likers(0).empty());
}

TEST(BuildGraph, DuplicateLikesCollapse) {
  std::vector<PostRecord> posts{sci_post("p1"), sci_post("p2")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p1", "u1"}, {"p2", "u1"}};
  auto g = build_graph(posts, likes);
  EXPECT_EQ(g.num_posts(), 2u);
  EXPECT_EQ(g.num_users(), 1u);
  EXPECT_EQ(g.num_likes(), 2u);
}

TEST(BuildGraph, LikeOnUndeclaredPost) {
  std::vector<PostRecord> posts{sci_post("p1")};
  std::vector<LikeRecord> likes{{"p9", "u1"}};
  EXPECT_EQ(code_of([&] { build_graph(posts, likes); }), ErrorCode::UnknownPostId);
  try {
    build_graph(posts, likes);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("p9"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("u1"), std::string::npos);
  }
}

TEST(BuildGraph, DuplicatePostId) {
  std::vector<PostRecord> posts{sci_post("p1"), hoax_post("p1")};
  EXPECT_EQ(code_of([&] { build_graph(posts, {}); }), ErrorCode::DuplicatePostId);
}

TEST(BuildGraph, IdsMapToLexicographicIndices) {
  std::vector<PostRecord> posts{sci_post("b"), hoax_post("a", "z"), sci_post("c", "y")};
  std::vector<LikeRecord> likes{{"c", "u2"}, {"a", "u10"}, {"b", "u1"}};
  auto g = build_graph(posts, likes);
  EXPECT_EQ(g.post_id(0), "a");
  EXPECT_EQ(g.post_id(2), "c");
  EXPECT_EQ(g.user_id(0), "u1");
  EXPECT_EQ(g.user_id(1), "u10");
  EXPECT_EQ(g.user_id(2), "u2");
  EXPECT_EQ(g.page_id(g.page_of(0)), "z");
  EXPECT_EQ(g.label(0), Label::Hoax);
  EXPECT_EQ(g.num_pages(), 3u);
  EXPECT_FALSE(g.find_post("d").has_value());
}

TEST(Components, DisjointPairs) {
  std::vector<PostRecord> posts{sci_post("p1"), sci_post("p2")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p2", "u2"}};
  EXPECT_EQ(connected_components(build_graph(posts, likes)).size(), 2u);
}

TEST(Components, SharedUserMerges) {
  std::vector<PostRecord> posts{sci_post("p1"), sci_post("p2")};
  std::vector<LikeRecord> likes{{"p1", "u1"}, {"p2", "u1"}};
  EXPECT_EQ(connected_components(build_graph(posts, likes)).size(), 1u);
}

TEST(Components, EmptyGraph) {
  EXPECT_TRUE(connected_components(build_graph({}, {})).empty());
}

TEST(Components, OrderedBySmallestPost) {
  std::vector<PostRecord> posts{sci_post("a"), sci_post("b"), sci_post("c"), sci_post("d")};
  std::vector<LikeRecord> likes{{"a", "u1"}, {"d", "u1"}, {"b", "u2"}, {"c", "u3"}};
  auto comps = connected_components(build_graph(posts, likes));
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0].posts, (std::vector<PostIndex>{0, 3}));
  EXPECT_EQ(comps[1].posts, (std::vector<PostIndex>{1}));
  EXPECT_EQ(comps[2].posts, (std::vector<PostIndex>{2}));
}

class RandomGraphs : public ::testing::TestWithParam<int> {};

TEST_P(RandomGraphs, AdjacencyIsSortedTranspose) {
  std::mt19937_64 gen(GetParam());
  auto spec = hoax_test::random_graph(gen, 12, 12);
  auto g = spec.build();
  std::size_t from_posts = 0, from_users = 0;
  std::set<std::pair<PostIndex, UserIndex>> a, b;
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    auto likers = g.likers(i);
    EXPECT_TRUE(std::is_sorted(likers.begin(), likers.end()));
    EXPECT_EQ(std::adjacent_find(likers.begin(), likers.end()), likers.end());
    for (auto u : likers) a.insert({i, u});
    from_posts += likers.size();
  }
  for (UserIndex u = 0; u < g.num_users(); ++u) {
    auto liked = g.liked_posts(u);
    EXPECT_FALSE(liked.empty());
    EXPECT_TRUE(std::is_sorted(liked.begin(), liked.end()));
    for (auto i : liked) b.insert({i, u});
    from_users += liked.size();
  }
  EXPECT_EQ(a, b);
  EXPECT_EQ(from_posts, g.num_likes());
  EXPECT_EQ(from_users, g.num_likes());
}

TEST_P(RandomGraphs, InputOrderDoesNotMatter) {
  std::mt19937_64 gen(GetParam());
  auto spec = hoax_test::random_graph(gen, 12, 12);
  auto shuffled = spec;
  std::shuffle(shuffled.posts.begin(), shuffled.posts.end(), gen);
  std::shuffle(shuffled.likes.begin(), shuffled.likes.end(), gen);
  if (!shuffled.likes.empty()) shuffled.likes.push_back(shuffled.likes.front());
  auto g1 = spec.build();
  auto g2 = shuffled.build();
  ASSERT_EQ(g1.num_posts(), g2.num_posts());
  ASSERT_EQ(g1.num_users(), g2.num_users());
  for (PostIndex i = 0; i < g1.num_posts(); ++i) {
    EXPECT_EQ(g1.post_id(i), g2.post_id(i));
    EXPECT_TRUE(std::ranges::equal(g1.likers(i), g2.likers(i)));
  }
}

TEST_P(RandomGraphs, ComponentsReconstructLikes) {
  std::mt19937_64 gen(GetParam());
  auto g = hoax_test::random_graph(gen, 12, 12, 0.15).build();
  auto comps = connected_components(g);
  std::set<std::pair<std::string, std::string>> rebuilt;
  std::vector<int> post_seen(g.num_posts()), user_seen(g.num_users());
  PostIndex previous_first = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    ASSERT_FALSE(comp.posts.empty());
    if (c > 0) EXPECT_GT(comp.posts.front(), previous_first);
    previous_first = comp.posts.front();
    std::set<UserIndex> users(comp.users.begin(), comp.users.end());
    for (auto i : comp.posts) {
      ++post_seen[i];
      for (auto u : g.likers(i)) {
        EXPECT_TRUE(users.count(u)) << "like leaves its component";
        rebuilt.insert({g.post_id(i), g.user_id(u)});
      }
    }
    for (auto u : comp.users) ++user_seen[u];
  }
  EXPECT_EQ(rebuilt, like_set(g));
  EXPECT_TRUE(std::ranges::all_of(post_seen, [](int n) { return n == 1; }));
  EXPECT_TRUE(std::ranges::all_of(user_seen, [](int n) { return n == 1; }));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range(0, 25));

TEST(InducedSubgraph, KeepsOnlySelectedUsers) {
  std::vector<PostRecord> posts{hoax_post("h1"), sci_post("n1"), sci_post("n2")};
  std::vector<LikeRecord> likes{{"h1", "u1"}, {"n1", "u1"}, {"n1", "u2"}, {"n2", "u2"}};
  auto g = build_graph(posts, likes);
  std::vector<PostIndex> keep_posts{0, 1};
  std::vector<UserIndex> keep_users{0};
  auto sub = induced_subgraph(g, keep_posts, keep_users);
  EXPECT_EQ(sub.num_posts(), 2u);
  EXPECT_EQ(sub.num_users(), 1u);
  EXPECT_EQ(sub.num_likes(), 2u);
  auto all = induced_subgraph(g, keep_posts);
  EXPECT_EQ(all.num_users(), 2u);
  EXPECT_EQ(all.num_likes(), 3u);
}
