#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/profiles.hpp"
#include "stylo/tagger.hpp"

namespace stylo {

// The 12 stylometric channels. Values are the canonical report indices.
enum class FeatureCategory : int {
  kLetterUni = 1,
  kLetterBi = 2,
  kLetterTri = 3,
  kLetterQuad = 4,
  kSpecialChars = 5,
  kFunctionWords = 6,
  kPunctuation = 7,
  kPosAUni = 8,
  kPosABi = 9,
  kWords = 10,
  kPosBUni = 11,
  kPosBBi = 12,
};

inline constexpr int kCategoryCount = 12;

inline int category_index(FeatureCategory c) { return static_cast<int>(c); }

std::string_view category_slug(FeatureCategory c);
std::optional<FeatureCategory> category_from_index(int index);
std::optional<FeatureCategory> category_from_slug(std::string_view slug);

// All 12 categories in index order.
const std::vector<FeatureCategory>& all_categories();

// Sparse frequency vector for one category. Entries are sorted by token,
// strictly positive, and sum to 1 whenever the vector is nonempty.
class FeatureVector {
 public:
  using Entry = std::pair<std::string, double>;

  FeatureVector() = default;
  explicit FeatureVector(FeatureCategory category) : category_(category) {}

  static FeatureVector from_counts(FeatureCategory category,
                                   const std::map<std::string, std::uint64_t>& counts);
  // Entries must be positive; they are sorted and merged here.
  static FeatureVector from_entries(FeatureCategory category, std::vector<Entry> entries);

  FeatureCategory category() const { return category_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double weight(std::string_view token) const;  // 0 when absent

  bool operator==(const FeatureVector&) const = default;

 private:
  FeatureCategory category_ = FeatureCategory::kLetterUni;
  std::vector<Entry> entries_;
};

// Per-author bundle; categories may be missing (e.g. no channel-B tags).
struct ProfileFeatures {
  std::string author_id;
  std::string site_id;
  std::map<FeatureCategory, FeatureVector> vectors;

  bool has(FeatureCategory c) const { return vectors.count(c) > 0; }
  const FeatureVector* find(FeatureCategory c) const {
    auto it = vectors.find(c);
    return it == vectors.end() ? nullptr : &it->second;
  }

  bool operator==(const ProfileFeatures&) const = default;
};

// ---- extractors ----

// Sliding windows over maximal runs of lowercase letters; windows never span
// a non-letter. n in 1..4.
FeatureVector extract_letter_ngrams(const AuthorProfile& profile, int n);

// Per-character counts over the raw text, normalized within charset hits.
FeatureVector extract_charset_freq(const AuthorProfile& profile,
                                   const std::vector<char>& charset,
                                   FeatureCategory category);

// Lowercased, edge-punctuation-stripped tokens found in the lexicon.
FeatureVector extract_function_words(const AuthorProfile& profile,
                                     const std::set<std::string>& lexicon);

// All lowercased, edge-punctuation-stripped tokens.
FeatureVector extract_words(const AuthorProfile& profile);

// n-grams over tag sequences; windows never span run (post) boundaries.
// n in 1..2. Bigram tokens join the two tags with a single space.
FeatureVector extract_tag_ngrams(const std::vector<std::vector<std::string>>& tag_runs,
                                 int n, FeatureCategory category);

// Default symbol sets; both can be overridden from config files.
const std::vector<char>& default_special_chars();  // 20 characters
const std::vector<char>& default_punctuation();    // 8 marks

struct ExtractionConfig {
  std::vector<char> special_chars = default_special_chars();
  std::vector<char> punctuation = default_punctuation();
  std::set<std::string> function_words;
  std::set<FeatureCategory> enabled;  // empty means all 12

  bool is_enabled(FeatureCategory c) const {
    return enabled.empty() || enabled.count(c) > 0;
  }
};

// Computes every enabled category for one profile. Channel-A tags come from
// the built-in tagger; channel-B categories are produced only for posts with
// entries in `external_tags` and are omitted when no post has any.
ProfileFeatures extract_all(const AuthorProfile& profile, const ExtractionConfig& config,
                            const ExternalTagIndex* external_tags = nullptr);

}  // namespace stylo
