#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace stylo {

// Two tag channels feed the tag n-gram features: channel A comes from the
// built-in rule tagger, channel B from tags produced by an external tool.
enum class TagChannel { kPosA, kPosB };

// 12-tag universal-style tagset used by the built-in tagger.
const std::vector<std::string>& builtin_tagset();

// Deterministic rule-based tags, one per token. Priority: closed-class
// lexicon, punctuation-only token, suffix rules (-ly, -ing, -ed, -s),
// digit token, NOUN fallback.
std::vector<std::string> baseline_tag(const std::vector<std::string>& tokens);

struct TaggedPost {
  std::string post_id;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;  // same length as tokens
  TagChannel channel = TagChannel::kPosB;
};

// File format: one block per post, a "#post <post_id>" header line followed
// by one "token<TAB>tag" line per token. Errors report the offending line.
std::vector<TaggedPost> parse_external_tags(std::istream& in, TagChannel channel,
                                            const std::string& source_name);
std::vector<TaggedPost> ingest_external_tags(const std::string& path,
                                             TagChannel channel = TagChannel::kPosB);

void write_external_tags(std::ostream& out, const std::vector<TaggedPost>& posts);

// post_id -> tag sequence, for joining tags onto profiles.
using ExternalTagIndex = std::map<std::string, std::vector<std::string>>;
ExternalTagIndex build_tag_index(const std::vector<TaggedPost>& posts);

}  // namespace stylo
