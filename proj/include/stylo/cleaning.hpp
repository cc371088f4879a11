#pragma once

#include <optional>
#include <set>
#include <string>

#include "stylo/posts.hpp"

namespace stylo {

struct CleaningConfig {
  // Sites where a post whose first token is "rt" is a copied repost and is
  // dropped whole.
  std::set<std::string> retweet_sites{"twitter"};

  // A post counts as English when at least this fraction of its bytes is
  // printable ASCII and at least one token is a known function word.
  double english_threshold = 0.7;

  // Lowercase function-word lexicon backing the English check.
  std::set<std::string> function_words;

  // Authors below this cumulative word count are dropped at profile build.
  std::size_t min_words = 1000;

  bool filter_retweets_for(const std::string& site_id) const {
    return retweet_sites.count(site_id) > 0;
  }
};

// Removes scheme-prefixed URL substrings (http://, https://, www.) up to the
// next whitespace, drops @mention tokens, and renormalizes whitespace to
// single spaces.
std::string strip_urls_and_mentions(const std::string& text);

// Pure function of the text: byte-ratio gate plus one function-word hit.
bool passes_english_heuristic(const std::string& text, const CleaningConfig& config);

// Returns nullopt when the post is a repost ("rt" first token on a filtered
// site), fails the English check, or is empty once URLs and mentions are
// gone. Otherwise returns the post with cleaned, renormalized text. The
// repost and English checks run on the stripped text so that cleaning is
// idempotent.
std::optional<Post> clean_post(const Post& post, const CleaningConfig& config);

}  // namespace stylo
