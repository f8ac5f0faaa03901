#include "hoax/intersect.hpp"

#include "json_out.hpp"

namespace hoax {

namespace {

bool is_mixed(const LikeGraph& g, UserIndex u) {
  bool hoax = false, nonhoax = false;
  for (PostIndex i : g.liked_posts(u)) {
    (g.label(i) == Label::Hoax ? hoax : nonhoax) = true;
    if (hoax && nonhoax) return true;
  }
  return false;
}

}  // namespace

IntersectionReport build_intersection(const LikeGraph& g,
                                      IntersectionOptions options) {
  std::vector<UserIndex> mixed;
  std::vector<bool> keep_post(g.num_posts(), false);
  for (UserIndex u = 0; u < g.num_users(); ++u) {
    if (!is_mixed(g, u)) continue;
    mixed.push_back(u);
    for (PostIndex i : g.liked_posts(u)) keep_post[i] = true;
  }

  std::vector<PostIndex> posts;
  for (PostIndex i = 0; i < g.num_posts(); ++i)
    if (keep_post[i]) posts.push_back(i);

  IntersectionReport report;
  report.graph = options.keep_outside_likes ? induced_subgraph(g, posts)
                                            : induced_subgraph(g, posts, mixed);

  const LikeGraph& h = report.graph;
  for (UserIndex u = 0; u < h.num_users(); ++u) {
    const auto liked = h.liked_posts(u);
    if (liked.size() == 2 && h.label(liked[0]) != h.label(liked[1]))
      ++report.n_straddlers;
  }
  report.straddler_fraction =
      h.num_users() == 0 ? 0.0
                         : static_cast<double>(report.n_straddlers) /
                               static_cast<double>(h.num_users());
  return report;
}

std::string intersection_json(const IntersectionReport& report) {
  detail::ordered_json j;
  j["n_posts"] = report.graph.num_posts();
  j["n_users"] = report.graph.num_users();
  j["n_likes"] = report.graph.num_likes();
  j["empty"] = report.empty();
  j["n_straddlers"] = report.n_straddlers;
  j["straddler_fraction"] = detail::ratio6(report.straddler_fraction);
  return detail::dump_json(j);
}

}  // namespace hoax
