#include "stylo/profiles.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "stylo/text.hpp"

namespace stylo {

std::string AuthorProfile::text() const { return join(tokens); }

std::vector<AuthorProfile> build_profiles(const std::vector<Post>& cleaned_posts,
                                          std::size_t min_words) {
  std::map<std::pair<std::string, std::string>, AuthorProfile> by_key;
  for (const Post& p : cleaned_posts) {
    std::vector<std::string> tokens = split_whitespace(p.text);
    if (tokens.empty()) continue;
    AuthorProfile& profile = by_key[{p.site_id, p.author_id}];
    if (profile.author_id.empty()) {
      profile.author_id = p.author_id;
      profile.site_id = p.site_id;
    }
    profile.post_offsets.push_back(profile.tokens.size());
    profile.post_ids.push_back(p.post_id);
    for (std::string& t : tokens) profile.tokens.push_back(std::move(t));
  }

  std::vector<AuthorProfile> kept;
  for (auto& [key, profile] : by_key) {
    if (profile.word_count() >= min_words) kept.push_back(std::move(profile));
  }
  return kept;  // map order is already (site_id, author_id)
}

CorpusStats corpus_stats(const std::vector<Post>& raw_posts,
                         const std::vector<AuthorProfile>& profiles) {
  CorpusStats stats;

  struct Acc {
    std::set<std::string> users;
    std::size_t posts = 0;
    std::size_t words = 0;
  };
  std::map<std::string, Acc> before;
  for (const Post& p : raw_posts) {
    Acc& acc = before[p.site_id];
    acc.users.insert(p.author_id);
    ++acc.posts;
    acc.words += split_whitespace(p.text).size();
  }
  for (const auto& [site, acc] : before) {
    SiteStats s;
    s.users = acc.users.size();
    s.posts = acc.posts;
    s.avg_posts_per_user = s.users ? static_cast<double>(s.posts) / s.users : 0.0;
    s.avg_words_per_post = s.posts ? static_cast<double>(acc.words) / s.posts : 0.0;
    stats.before[site] = s;
  }

  struct AfterAcc {
    std::size_t users = 0;
    std::size_t posts = 0;
    std::size_t words = 0;
  };
  std::map<std::string, AfterAcc> after;
  for (const AuthorProfile& profile : profiles) {
    AfterAcc& acc = after[profile.site_id];
    ++acc.users;
    acc.posts += profile.post_count();
    acc.words += profile.word_count();
  }
  for (const auto& [site, acc] : after) {
    SiteStats s;
    s.users = acc.users;
    s.posts = acc.posts;
    s.avg_posts_per_user = s.users ? static_cast<double>(s.posts) / s.users : 0.0;
    s.avg_words_per_post = s.posts ? static_cast<double>(acc.words) / s.posts : 0.0;
    stats.after[site] = s;
  }
  return stats;
}

namespace {

void write_stats_rows(std::ostream& out, const char* phase,
                      const std::map<std::string, SiteStats>& rows) {
  for (const auto& [site, s] : rows) {
    out << phase << '\t' << site << '\t' << s.users << '\t' << s.posts << '\t'
        << s.avg_posts_per_user << '\t' << s.avg_words_per_post << '\n';
  }
}

}  // namespace

void write_corpus_stats(std::ostream& out, const CorpusStats& stats) {
  out << "phase\tsite\tusers\tposts\tavg_posts_per_user\tavg_words_per_post\n";
  write_stats_rows(out, "before", stats.before);
  write_stats_rows(out, "after", stats.after);
}

}  // namespace stylo
