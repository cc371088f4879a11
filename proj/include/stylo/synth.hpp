#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/experiment.hpp"
#include "stylo/posts.hpp"
#include "stylo/tagger.hpp"

namespace stylo {

// Two-site synthetic corpus with ground truth. Every author draws tokens
// from an author-specific multinomial over a shared vocabulary (boosted
// preferred words, skewed function-word, punctuation and symbol habits); the
// stream is split in half across the two pseudo-sites. `signal` scales how
// far the per-author habits deviate from the shared base distribution.
struct SynthConfig {
  std::size_t matched_authors = 200;  // present on both sites
  std::size_t extra_known = 0;        // site-2-only authors (pollution pool)
  std::size_t words_per_side = 2000;  // tokens per author per site
  double signal = 0.5;                // 0 = everyone identical, 1 = strongly distinct
  std::size_t vocab_size = 4000;      // shared content vocabulary
  std::size_t preferred_words = 80;   // boosted tokens per author
  double punctuation_prob = 0.18;     // chance a token carries a trailing mark
  double special_prob = 0.04;         // chance of a symbol-prefixed token
  double digit_prob = 0.01;           // chance of a numeric token
  std::size_t post_words_min = 6;
  std::size_t post_words_max = 30;
  std::string site1 = "alpha";
  std::string site2 = "beta";
  std::uint64_t seed = 1;
};

struct SynthCorpus {
  std::vector<Post> posts;  // both sites
  MatchSet truth;
  // Alternative tag channel for every post, produced by a hash/shape rule
  // unrelated to the built-in tagger; feeds the external-tag ingestion path.
  std::vector<TaggedPost> external_tags;
};

SynthCorpus generate_synth(const SynthConfig& config);

// Writes posts.jsonl, truth.tsv and external_tags.txt under `dir`.
void write_synth(const SynthCorpus& corpus, const std::string& dir, bool emit_tags = true);

}  // namespace stylo
