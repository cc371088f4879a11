#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stylo/posts.hpp"

namespace stylo {

// All surviving posts of one author on one site merged into a single token
// stream. Post boundaries are kept so tag n-grams never cross posts.
struct AuthorProfile {
  std::string author_id;
  std::string site_id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> post_offsets;  // start of each post in `tokens`
  std::vector<std::string> post_ids;      // parallel to post_offsets

  std::size_t word_count() const { return tokens.size(); }
  std::size_t post_count() const { return post_offsets.size(); }

  // Token range [begin, end) of post i.
  std::pair<std::size_t, std::size_t> post_span(std::size_t i) const {
    std::size_t begin = post_offsets[i];
    std::size_t end = (i + 1 < post_offsets.size()) ? post_offsets[i + 1] : tokens.size();
    return {begin, end};
  }

  // Tokens joined by single spaces; the renormalized body of text.
  std::string text() const;
};

// One profile per (author, site); whitespace tokenization; profiles with
// fewer than min_words total words are dropped. Output sorted by
// (site_id, author_id).
std::vector<AuthorProfile> build_profiles(const std::vector<Post>& cleaned_posts,
                                          std::size_t min_words = 1000);

struct SiteStats {
  std::size_t users = 0;
  std::size_t posts = 0;
  double avg_posts_per_user = 0.0;
  double avg_words_per_post = 0.0;
};

// The four per-site statistics, before and after cleaning. "After" covers
// only posts belonging to retained profiles.
struct CorpusStats {
  std::map<std::string, SiteStats> before;
  std::map<std::string, SiteStats> after;
};

CorpusStats corpus_stats(const std::vector<Post>& raw_posts,
                         const std::vector<AuthorProfile>& profiles);

void write_corpus_stats(std::ostream& out, const CorpusStats& stats);

}  // namespace stylo
