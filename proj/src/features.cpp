#include "stylo/features.hpp"

#include <algorithm>
#include <array>

#include "stylo/errors.hpp"
#include "stylo/text.hpp"

namespace stylo {

namespace {

struct CategoryInfo {
  FeatureCategory category;
  std::string_view slug;
};

constexpr std::array<CategoryInfo, kCategoryCount> kCategoryTable = {{
    {FeatureCategory::kLetterUni, "letter_uni"},
    {FeatureCategory::kLetterBi, "letter_bi"},
    {FeatureCategory::kLetterTri, "letter_tri"},
    {FeatureCategory::kLetterQuad, "letter_quad"},
    {FeatureCategory::kSpecialChars, "special_chars"},
    {FeatureCategory::kFunctionWords, "function_words"},
    {FeatureCategory::kPunctuation, "punctuation"},
    {FeatureCategory::kPosAUni, "pos_a_uni"},
    {FeatureCategory::kPosABi, "pos_a_bi"},
    {FeatureCategory::kWords, "words"},
    {FeatureCategory::kPosBUni, "pos_b_uni"},
    {FeatureCategory::kPosBBi, "pos_b_bi"},
}};

}  // namespace

std::string_view category_slug(FeatureCategory c) {
  return kCategoryTable[static_cast<std::size_t>(category_index(c)) - 1].slug;
}

std::optional<FeatureCategory> category_from_index(int index) {
  if (index < 1 || index > kCategoryCount) return std::nullopt;
  return kCategoryTable[static_cast<std::size_t>(index) - 1].category;
}

std::optional<FeatureCategory> category_from_slug(std::string_view slug) {
  for (const CategoryInfo& info : kCategoryTable) {
    if (info.slug == slug) return info.category;
  }
  return std::nullopt;
}

const std::vector<FeatureCategory>& all_categories() {
  static const std::vector<FeatureCategory> all = [] {
    std::vector<FeatureCategory> v;
    for (const CategoryInfo& info : kCategoryTable) v.push_back(info.category);
    return v;
  }();
  return all;
}

FeatureVector FeatureVector::from_counts(FeatureCategory category,
                                         const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [token, count] : counts) total += count;
  FeatureVector out(category);
  if (total == 0) return out;
  out.entries_.reserve(counts.size());
  for (const auto& [token, count] : counts) {
    if (count == 0) continue;
    out.entries_.emplace_back(token, static_cast<double>(count) / static_cast<double>(total));
  }
  return out;
}

FeatureVector FeatureVector::from_entries(FeatureCategory category,
                                          std::vector<Entry> entries) {
  for (const Entry& e : entries) {
    if (e.second <= 0.0) {
      throw ValidationError("feature weight must be positive for token '" + e.first + "'");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  FeatureVector out(category);
  for (Entry& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
    } else {
      out.entries_.push_back(std::move(e));
    }
  }
  return out;
}

double FeatureVector::weight(std::string_view token) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), token,
                             [](const Entry& e, std::string_view t) { return e.first < t; });
  if (it == entries_.end() || it->first != token) return 0.0;
  return it->second;
}

FeatureVector extract_letter_ngrams(const AuthorProfile& profile, int n) {
  if (n < 1 || n > 4) throw ValidationError("letter n-gram order must be 1..4");
  FeatureCategory category = *category_from_index(n);  // indices 1..4 are the letter grams
  std::string text = profile.text();

  std::map<std::string, std::uint64_t> counts;
  std::size_t run_start = 0;
  std::size_t i = 0;
  auto flush_run = [&](std::size_t end) {
    std::size_t len = end - run_start;
    if (len < static_cast<std::size_t>(n)) return;
    for (std::size_t k = run_start; k + n <= end; ++k) {
      std::string gram(static_cast<std::size_t>(n), '\0');
      for (int j = 0; j < n; ++j) gram[static_cast<std::size_t>(j)] = ascii_lower(text[k + j]);
      ++counts[gram];
    }
  };
  for (; i < text.size(); ++i) {
    if (!is_ascii_letter(text[i])) {
      flush_run(i);
      run_start = i + 1;
    }
  }
  flush_run(text.size());
  return FeatureVector::from_counts(category, counts);
}

FeatureVector extract_charset_freq(const AuthorProfile& profile,
                                   const std::vector<char>& charset,
                                   FeatureCategory category) {
  if (charset.empty()) throw ValidationError("charset must not be empty");
  std::array<std::uint64_t, 256> hits{};
  std::array<bool, 256> in_set{};
  for (char c : charset) in_set[static_cast<unsigned char>(c)] = true;
  std::string text = profile.text();
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (in_set[u]) ++hits[u];
  }
  std::map<std::string, std::uint64_t> counts;
  for (char c : charset) {
    unsigned char u = static_cast<unsigned char>(c);
    if (hits[u] > 0) counts[std::string(1, c)] = hits[u];
  }
  return FeatureVector::from_counts(category, counts);
}

FeatureVector extract_function_words(const AuthorProfile& profile,
                                     const std::set<std::string>& lexicon) {
  if (lexicon.empty()) throw ValidationError("function-word lexicon must not be empty");
  std::map<std::string, std::uint64_t> counts;
  for (const std::string& token : profile.tokens) {
    std::string w = normalize_token(token);
    if (!w.empty() && lexicon.count(w) > 0) ++counts[w];
  }
  return FeatureVector::from_counts(FeatureCategory::kFunctionWords, counts);
}

FeatureVector extract_words(const AuthorProfile& profile) {
  std::map<std::string, std::uint64_t> counts;
  for (const std::string& token : profile.tokens) {
    std::string w = normalize_token(token);
    if (!w.empty()) ++counts[w];
  }
  return FeatureVector::from_counts(FeatureCategory::kWords, counts);
}

FeatureVector extract_tag_ngrams(const std::vector<std::vector<std::string>>& tag_runs,
                                 int n, FeatureCategory category) {
  if (n < 1 || n > 2) throw ValidationError("tag n-gram order must be 1 or 2");
  std::map<std::string, std::uint64_t> counts;
  for (const std::vector<std::string>& run : tag_runs) {
    if (run.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= run.size(); ++i) {
      if (n == 1) {
        ++counts[run[i]];
      } else {
        ++counts[run[i] + " " + run[i + 1]];
      }
    }
  }
  return FeatureVector::from_counts(category, counts);
}

const std::vector<char>& default_special_chars() {
  static const std::vector<char> chars = {'*', '@', '#', '$', '%', '&', '+',
                                          '=', '~', '^', '|', '\\', '/', '<',
                                          '>', '_', '[', ']', '{', '}'};
  return chars;
}

const std::vector<char>& default_punctuation() {
  static const std::vector<char> marks = {'.', ',', '!', '?', ';', ':', '\'', '"'};
  return marks;
}

ProfileFeatures extract_all(const AuthorProfile& profile, const ExtractionConfig& config,
                            const ExternalTagIndex* external_tags) {
  ProfileFeatures out;
  out.author_id = profile.author_id;
  out.site_id = profile.site_id;

  auto put = [&](FeatureCategory c, FeatureVector v) {
    if (config.is_enabled(c) && !v.empty()) out.vectors.emplace(c, std::move(v));
  };

  for (int n = 1; n <= 4; ++n) {
    FeatureCategory c = *category_from_index(n);
    if (config.is_enabled(c)) put(c, extract_letter_ngrams(profile, n));
  }
  if (config.is_enabled(FeatureCategory::kSpecialChars)) {
    put(FeatureCategory::kSpecialChars,
        extract_charset_freq(profile, config.special_chars, FeatureCategory::kSpecialChars));
  }
  if (config.is_enabled(FeatureCategory::kFunctionWords) && !config.function_words.empty()) {
    put(FeatureCategory::kFunctionWords,
        extract_function_words(profile, config.function_words));
  }
  if (config.is_enabled(FeatureCategory::kPunctuation)) {
    put(FeatureCategory::kPunctuation,
        extract_charset_freq(profile, config.punctuation, FeatureCategory::kPunctuation));
  }
  if (config.is_enabled(FeatureCategory::kWords)) {
    put(FeatureCategory::kWords, extract_words(profile));
  }

  bool want_pos_a = config.is_enabled(FeatureCategory::kPosAUni) ||
                    config.is_enabled(FeatureCategory::kPosABi);
  if (want_pos_a) {
    std::vector<std::vector<std::string>> runs;
    runs.reserve(profile.post_count());
    for (std::size_t i = 0; i < profile.post_count(); ++i) {
      auto [begin, end] = profile.post_span(i);
      std::vector<std::string> post_tokens(profile.tokens.begin() + begin,
                                           profile.tokens.begin() + end);
      runs.push_back(baseline_tag(post_tokens));
    }
    put(FeatureCategory::kPosAUni, extract_tag_ngrams(runs, 1, FeatureCategory::kPosAUni));
    put(FeatureCategory::kPosABi, extract_tag_ngrams(runs, 2, FeatureCategory::kPosABi));
  }

  bool want_pos_b = config.is_enabled(FeatureCategory::kPosBUni) ||
                    config.is_enabled(FeatureCategory::kPosBBi);
  if (want_pos_b && external_tags != nullptr) {
    std::vector<std::vector<std::string>> runs;
    for (const std::string& post_id : profile.post_ids) {
      auto it = external_tags->find(post_id);
      if (it != external_tags->end() && !it->second.empty()) runs.push_back(it->second);
    }
    if (!runs.empty()) {
      put(FeatureCategory::kPosBUni, extract_tag_ngrams(runs, 1, FeatureCategory::kPosBUni));
      put(FeatureCategory::kPosBBi, extract_tag_ngrams(runs, 2, FeatureCategory::kPosBBi));
    }
  }
  return out;
}

}  // namespace stylo
