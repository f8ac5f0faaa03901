#include "hoax/graph.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "hoax/error.hpp"

namespace hoax {

std::string_view to_string(Label label) noexcept {
  return label == Label::Hoax ? "hoax" : "nonhoax";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "hoax") return Label::Hoax;
  if (text == "nonhoax") return Label::NonHoax;
  return std::nullopt;
}

namespace {

template <class T>
std::optional<T> find_sorted(const std::vector<std::string>& ids,
                             std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<T>(it - ids.begin());
}

std::vector<std::size_t> csr_offsets(std::size_t n_rows,
                                     std::span<const std::uint32_t> rows) {
  std::vector<std::size_t> offsets(n_rows + 1, 0);
  for (auto r : rows) ++offsets[r + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return offsets;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // smaller root wins, so roots are minimal members
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<PostIndex> LikeGraph::find_post(std::string_view post_id) const {
  return find_sorted<PostIndex>(post_ids_, post_id);
}

std::optional<UserIndex> LikeGraph::find_user(std::string_view user_id) const {
  return find_sorted<UserIndex>(user_ids_, user_id);
}

std::optional<PageIndex> LikeGraph::find_page(std::string_view page_id) const {
  return find_sorted<PageIndex>(page_ids_, page_id);
}

std::vector<PostRecord> LikeGraph::post_records() const {
  std::vector<PostRecord> out;
  out.reserve(num_posts());
  for (PostIndex i = 0; i < num_posts(); ++i)
    out.push_back({post_ids_[i], page_ids_[post_page_[i]], post_label_[i]});
  return out;
}

std::vector<LikeRecord> LikeGraph::like_records() const {
  std::vector<LikeRecord> out;
  out.reserve(num_likes());
  for (PostIndex i = 0; i < num_posts(); ++i)
    for (UserIndex u : likers(i)) out.push_back({post_ids_[i], user_ids_[u]});
  return out;
}

LikeGraph build_graph(std::span<const PostRecord> posts,
                      std::span<const LikeRecord> likes) {
  LikeGraph g;

  std::vector<const PostRecord*> sorted_posts;
  sorted_posts.reserve(posts.size());
  for (const auto& p : posts) sorted_posts.push_back(&p);
  std::sort(sorted_posts.begin(), sorted_posts.end(),
            [](auto* a, auto* b) { return a->post_id < b->post_id; });
  for (std::size_t k = 1; k < sorted_posts.size(); ++k) {
    if (sorted_posts[k]->post_id == sorted_posts[k - 1]->post_id)
      throw Error(ErrorCode::DuplicatePostId, sorted_posts[k]->post_id);
  }

  g.post_ids_.reserve(posts.size());
  for (auto* p : sorted_posts) {
    g.post_ids_.push_back(p->post_id);
    g.page_ids_.push_back(p->page_id);
  }
  std::sort(g.page_ids_.begin(), g.page_ids_.end());
  g.page_ids_.erase(std::unique(g.page_ids_.begin(), g.page_ids_.end()),
                    g.page_ids_.end());
  for (auto* p : sorted_posts) {
    g.post_page_.push_back(*g.find_page(p->page_id));
    g.post_label_.push_back(p->label);
  }

  g.user_ids_.reserve(likes.size());
  for (const auto& like : likes) g.user_ids_.push_back(like.user_id);
  std::sort(g.user_ids_.begin(), g.user_ids_.end());
  g.user_ids_.erase(std::unique(g.user_ids_.begin(), g.user_ids_.end()),
                    g.user_ids_.end());
  g.user_ids_.shrink_to_fit();

  std::vector<std::pair<PostIndex, UserIndex>> pairs;
  pairs.reserve(likes.size());
  for (const auto& like : likes) {
    auto post = g.find_post(like.post_id);
    if (!post) {
      throw Error(ErrorCode::UnknownPostId,
                  like.post_id + " (in like " + like.post_id + "," +
                      like.user_id + ")");
    }
    pairs.emplace_back(*post, *g.find_user(like.user_id));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<PostIndex> rows(pairs.size());
  std::vector<UserIndex> cols(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    rows[k] = pairs[k].first;
    cols[k] = pairs[k].second;
  }
  g.post_offsets_ = csr_offsets(g.num_posts(), rows);
  g.post_to_user_ = std::move(cols);

  // Transpose. Scanning pairs in (post, user) order fills each user's list in
  // ascending post order.
  g.user_offsets_ = csr_offsets(g.num_users(), g.post_to_user_);
  g.user_to_post_.resize(pairs.size());
  std::vector<std::size_t> cursor(g.user_offsets_.begin(),
                                  g.user_offsets_.end() - 1);
  for (const auto& [i, u] : pairs) g.user_to_post_[cursor[u]++] = i;

  return g;
}

std::vector<Component> connected_components(const LikeGraph& g) {
  const std::size_t n_posts = g.num_posts();
  DisjointSets sets(n_posts + g.num_users());
  for (PostIndex i = 0; i < n_posts; ++i)
    for (UserIndex u : g.likers(i)) sets.unite(i, n_posts + u);

  // Every user has a like, so every root is a post index and the roots come
  // out in ascending order of the smallest contained post.
  std::vector<std::size_t> slot(n_posts, SIZE_MAX);
  std::vector<Component> out;
  for (PostIndex i = 0; i < n_posts; ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].posts.push_back(i);
  }
  for (UserIndex u = 0; u < g.num_users(); ++u)
    out[slot[sets.find(n_posts + u)]].users.push_back(u);
  return out;
}

LikeGraph induced_subgraph(const LikeGraph& g, std::span<const PostIndex> posts,
                           std::span<const UserIndex> users) {
  std::vector<bool> keep_user(g.num_users(), false);
  for (UserIndex u : users) keep_user[u] = true;

  std::vector<PostRecord> post_records;
  std::vector<LikeRecord> like_records;
  post_records.reserve(posts.size());
  for (PostIndex i : posts) {
    post_records.push_back({g.post_id(i), g.page_id(g.page_of(i)), g.label(i)});
    for (UserIndex u : g.likers(i))
      if (keep_user[u]) like_records.push_back({g.post_id(i), g.user_id(u)});
  }
  return build_graph(post_records, like_records);
}

LikeGraph induced_subgraph(const LikeGraph& g,
                           std::span<const PostIndex> posts) {
  std::vector<UserIndex> all(g.num_users());
  std::iota(all.begin(), all.end(), UserIndex{0});
  return induced_subgraph(g, posts, all);
}

}  // namespace hoax
