#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hoax {

enum class Label : std::uint8_t { Hoax, NonHoax };

std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

// Dense indices. Index order equals ascending lexicographic order of the
// external string ids, so iterating by index is iterating by id.
using PostIndex = std::uint32_t;
using UserIndex = std::uint32_t;
using PageIndex = std::uint32_t;

struct PostRecord {
  std::string post_id;
  std::string page_id;
  Label label = Label::NonHoax;
};

struct LikeRecord {
  std::string post_id;
  std::string user_id;
};

/// Immutable bipartite graph of posts x users. Both adjacency directions are
/// stored in CSR form with neighbour lists sorted ascending; every
/// floating-point reduction over a neighbourhood relies on that order.
class LikeGraph {
 public:
  LikeGraph() = default;

  std::size_t num_posts() const noexcept { return post_ids_.size(); }
  std::size_t num_users() const noexcept { return user_ids_.size(); }
  std::size_t num_likes() const noexcept { return post_to_user_.size(); }
  std::size_t num_pages() const noexcept { return page_ids_.size(); }

  const std::string& post_id(PostIndex i) const { return post_ids_[i]; }
  const std::string& user_id(UserIndex u) const { return user_ids_[u]; }
  const std::string& page_id(PageIndex p) const { return page_ids_[p]; }
  PageIndex page_of(PostIndex i) const { return post_page_[i]; }
  Label label(PostIndex i) const { return post_label_[i]; }

  /// Users who liked post i (the neighbourhood of i), ascending.
  std::span<const UserIndex> likers(PostIndex i) const {
    return {post_to_user_.data() + post_offsets_[i],
            post_to_user_.data() + post_offsets_[i + 1]};
  }

  /// Posts liked by user u, ascending.
  std::span<const PostIndex> liked_posts(UserIndex u) const {
    return {user_to_post_.data() + user_offsets_[u],
            user_to_post_.data() + user_offsets_[u + 1]};
  }

  std::optional<PostIndex> find_post(std::string_view post_id) const;
  std::optional<UserIndex> find_user(std::string_view user_id) const;
  std::optional<PageIndex> find_page(std::string_view page_id) const;

  std::span<const std::string> post_ids() const noexcept { return post_ids_; }
  std::span<const std::string> user_ids() const noexcept { return user_ids_; }
  std::span<const std::string> page_ids() const noexcept { return page_ids_; }

  std::vector<PostRecord> post_records() const;
  /// All likes, ordered by (post, user).
  std::vector<LikeRecord> like_records() const;

 private:
  friend LikeGraph build_graph(std::span<const PostRecord>,
                               std::span<const LikeRecord>);

  std::vector<std::string> post_ids_;
  std::vector<std::string> user_ids_;
  std::vector<std::string> page_ids_;
  std::vector<PageIndex> post_page_;
  std::vector<Label> post_label_;

  std::vector<std::size_t> post_offsets_{0};
  std::vector<UserIndex> post_to_user_;
  std::vector<std::size_t> user_offsets_{0};
  std::vector<PostIndex> user_to_post_;
};

/// Builds a graph from declared posts and like pairs. Users are induced by the
/// likes; duplicate likes collapse. The result does not depend on input order.
/// Throws Error{UnknownPostId} for a like on an undeclared post and
/// Error{DuplicatePostId} when a post id is declared twice.
LikeGraph build_graph(std::span<const PostRecord> posts,
                      std::span<const LikeRecord> likes);

struct Component {
  std::vector<PostIndex> posts;
  std::vector<UserIndex> users;
};

/// Connected components of the bipartite graph, ordered by their smallest
/// post index. Unliked posts form singleton components.
std::vector<Component> connected_components(const LikeGraph& g);

/// Subgraph on the given posts, keeping only likes whose user is in `users`.
/// Users left without likes disappear, as in build_graph.
LikeGraph induced_subgraph(const LikeGraph& g, std::span<const PostIndex> posts,
                           std::span<const UserIndex> users);

/// Subgraph on the given posts with all of their likes.
LikeGraph induced_subgraph(const LikeGraph& g, std::span<const PostIndex> posts);

}  // namespace hoax
