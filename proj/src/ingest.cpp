#include "hoax/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "hoax/error.hpp"
#include "json_out.hpp"

namespace hoax {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

/// Calls row(line_no, fields) for each data row after checking the header.
template <class RowFn>
void read_csv(std::istream& in, std::string_view header, std::size_t n_fields,
              RowFn&& row) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) parse_fail(line_no, "expected header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    auto fields = split_commas(line);
    if (fields.size() != n_fields)
      parse_fail(line_no, "expected " + std::to_string(n_fields) + " fields");
    row(line_no, fields);
  }
  if (!seen_header) parse_fail(line_no, "missing header");
}

std::string checked_id(std::size_t line_no, std::string_view field,
                       const char* what) {
  if (!is_valid_id(field))
    parse_fail(line_no, std::string("invalid ") + what + " '" + std::string(field) + "'");
  return std::string(field);
}

Label checked_label(std::size_t line_no, std::string_view field) {
  auto label = parse_label(field);
  if (!label) parse_fail(line_no, "invalid label '" + std::string(field) + "'");
  return *label;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return in;
}

/// Rewrites "line N:" errors so they name the file.
template <class Fn>
auto with_file_context(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw Error(ErrorCode::ParseError, path.string() + ": " + msg);
  }
}

LikesSummary summarize(std::vector<std::uint64_t> counts) {
  LikesSummary s;
  if (counts.empty()) return s;
  std::sort(counts.begin(), counts.end());
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  s.mean = static_cast<double>(total) / static_cast<double>(counts.size());
  s.median = counts[(counts.size() - 1) / 2];
  s.max = counts.back();
  return s;
}

detail::ordered_json histogram_json(const Histogram& h) {
  auto arr = detail::ordered_json::array();
  for (const auto& [bucket, count] : h) arr.push_back({bucket, count});
  return arr;
}

detail::ordered_json summary_json(const LikesSummary& s) {
  detail::ordered_json j;
  j["mean"] = detail::ratio6(s.mean);
  j["median"] = s.median;
  j["max"] = s.max;
  return j;
}

}  // namespace

bool is_valid_id(std::string_view id) noexcept {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::vector<PostRecord> parse_posts_csv(std::istream& in) {
  std::vector<PostRecord> posts;
  read_csv(in, "post_id,page_id,label", 3, [&](std::size_t n, const auto& f) {
    posts.push_back({checked_id(n, f[0], "post_id"), checked_id(n, f[1], "page_id"),
                     checked_label(n, f[2])});
  });
  return posts;
}

std::vector<LikeRecord> parse_likes_csv(std::istream& in) {
  std::vector<LikeRecord> likes;
  read_csv(in, "post_id,user_id", 2, [&](std::size_t n, const auto& f) {
    likes.push_back({checked_id(n, f[0], "post_id"), checked_id(n, f[1], "user_id")});
  });
  return likes;
}

LikeGraph load_dataset(const std::filesystem::path& posts_path,
                       const std::filesystem::path& likes_path) {
  auto posts = with_file_context(posts_path, [&] {
    auto in = open_for_read(posts_path);
    return parse_posts_csv(in);
  });
  auto likes = with_file_context(likes_path, [&] {
    auto in = open_for_read(likes_path);
    return parse_likes_csv(in);
  });
  return build_graph(posts, likes);
}

TrainingSet parse_training_csv(std::istream& in, const LikeGraph& g) {
  TrainingSet set;
  read_csv(in, "post_id,label", 2, [&](std::size_t n, const auto& f) {
    const auto id = checked_id(n, f[0], "post_id");
    const Label label = checked_label(n, f[1]);
    auto post = g.find_post(id);
    if (!post) throw Error(ErrorCode::UnknownPostId, id + " (train line " + std::to_string(n) + ")");
    (label == Label::Hoax ? set.hoax : set.nonhoax).push_back(*post);
  });
  return normalized(g, std::move(set));
}

TrainingSet load_training(const std::filesystem::path& path, const LikeGraph& g) {
  return with_file_context(path, [&] {
    auto in = open_for_read(path);
    return parse_training_csv(in, g);
  });
}

std::string posts_csv(const LikeGraph& g) {
  std::string out = "post_id,page_id,label\n";
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    out += g.post_id(i);
    out += ',';
    out += g.page_id(g.page_of(i));
    out += ',';
    out += to_string(g.label(i));
    out += '\n';
  }
  return out;
}

std::string likes_csv(const LikeGraph& g) {
  std::string out = "post_id,user_id\n";
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    for (UserIndex u : g.likers(i)) {
      out += g.post_id(i);
      out += ',';
      out += g.user_id(u);
      out += '\n';
    }
  }
  return out;
}

DatasetStats compute_stats(const LikeGraph& g) {
  DatasetStats s;
  s.n_posts = g.num_posts();
  s.n_users = g.num_users();
  s.n_likes = g.num_likes();

  std::vector<std::uint64_t> hoax_counts, nonhoax_counts;
  for (PostIndex i = 0; i < g.num_posts(); ++i) {
    const std::uint64_t k = g.likers(i).size();
    if (g.label(i) == Label::Hoax) {
      ++s.n_hoax;
      ++s.likes_per_post_hoax[k];
      hoax_counts.push_back(k);
    } else {
      ++s.n_nonhoax;
      ++s.likes_per_post_nonhoax[k];
      nonhoax_counts.push_back(k);
    }
  }
  s.likes_per_post_hoax_summary = summarize(std::move(hoax_counts));
  s.likes_per_post_nonhoax_summary = summarize(std::move(nonhoax_counts));

  std::uint64_t single = 0;
  const std::size_t n_pages = g.num_pages();
  s.page_couser_matrix.assign(n_pages, std::vector<std::uint64_t>(n_pages, 0));
  std::vector<PageIndex> pages;
  for (UserIndex u = 0; u < g.num_users(); ++u) {
    const auto liked = g.liked_posts(u);
    ++s.likes_per_user[liked.size()];
    if (liked.size() == 1) ++single;

    bool any_hoax = false, any_nonhoax = false;
    pages.clear();
    for (PostIndex i : liked) {
      (g.label(i) == Label::Hoax ? any_hoax : any_nonhoax) = true;
      pages.push_back(g.page_of(i));
    }
    if (liked.size() >= 2) {
      if (any_hoax && any_nonhoax) ++s.user_categories.mixed;
      else if (any_hoax) ++s.user_categories.hoax_only;
      else ++s.user_categories.nonhoax_only;
    }

    std::sort(pages.begin(), pages.end());
    pages.erase(std::unique(pages.begin(), pages.end()), pages.end());
    for (std::size_t a = 0; a < pages.size(); ++a) {
      ++s.page_couser_matrix[pages[a]][pages[a]];
      for (std::size_t b = a + 1; b < pages.size(); ++b) {
        ++s.page_couser_matrix[pages[a]][pages[b]];
        ++s.page_couser_matrix[pages[b]][pages[a]];
      }
    }
  }
  s.single_like_user_fraction =
      s.n_users == 0 ? 0.0 : static_cast<double>(single) / static_cast<double>(s.n_users);
  s.pages.assign(g.page_ids().begin(), g.page_ids().end());
  return s;
}

std::string stats_json(const DatasetStats& s) {
  detail::ordered_json j;
  j["n_posts"] = s.n_posts;
  j["n_users"] = s.n_users;
  j["n_likes"] = s.n_likes;
  j["n_hoax"] = s.n_hoax;
  j["n_nonhoax"] = s.n_nonhoax;
  j["likes_per_post_summary"]["hoax"] = summary_json(s.likes_per_post_hoax_summary);
  j["likes_per_post_summary"]["nonhoax"] = summary_json(s.likes_per_post_nonhoax_summary);
  j["single_like_user_fraction"] = detail::ratio6(s.single_like_user_fraction);
  j["user_category_counts"]["hoax_only"] = s.user_categories.hoax_only;
  j["user_category_counts"]["nonhoax_only"] = s.user_categories.nonhoax_only;
  j["user_category_counts"]["mixed"] = s.user_categories.mixed;
  j["likes_per_post_histogram"]["hoax"] = histogram_json(s.likes_per_post_hoax);
  j["likes_per_post_histogram"]["nonhoax"] = histogram_json(s.likes_per_post_nonhoax);
  j["likes_per_user_histogram"] = histogram_json(s.likes_per_user);
  j["page_couser_matrix"]["pages"] = s.pages;
  j["page_couser_matrix"]["counts"] = s.page_couser_matrix;
  return detail::dump_json(j);
}

}  // namespace hoax
