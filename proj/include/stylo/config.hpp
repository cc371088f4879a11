#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stylo/cleaning.hpp"
#include "stylo/features.hpp"
#include "stylo/synth.hpp"

namespace stylo {

// Flat key-value config with [section] headers, '#' comments, and
// dotted keys for per-site flags (e.g. filter_retweets.twitter = true).
class IniFile {
 public:
  static IniFile parse(std::istream& in, const std::string& source_name);
  static IniFile parse_file(const std::string& path);

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  // All keys of a section that start with `prefix.`; returns suffix -> value.
  std::map<std::string, std::string> get_prefixed(const std::string& section,
                                                  const std::string& prefix) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

bool parse_bool(const std::string& value, const std::string& where);
std::uint64_t parse_u64(const std::string& value, const std::string& where);
double parse_double(const std::string& value, const std::string& where);
std::vector<std::size_t> parse_size_list(const std::string& value, const std::string& where);

// Everything a pipeline run needs, resolved from one config file.
struct RunConfig {
  // [paths]
  std::string posts_path;
  std::string ground_truth_path;
  std::string store_dir;
  std::string run_dir;
  std::string function_words_path;
  std::string special_chars_path;              // optional override
  std::string punctuation_path;                // optional override
  std::map<std::string, std::string> pos_b_tags;  // site -> external tags file
  char ground_truth_delimiter = '\t';
  bool ground_truth_header = false;

  // [cleaning]
  CleaningConfig cleaning;  // function_words filled by load_lexicons()

  // [features]
  std::vector<FeatureCategory> categories;  // enabled, in index order

  // [experiment]
  std::string site1;
  std::string site2;
  std::size_t author_size = 0;
  std::vector<std::size_t> k_values{1, 10, 100};
  std::size_t n_orderings = 10;
  std::uint64_t seed = 0;
  std::size_t top_t_floor = 1;

  // [hill_climb]
  std::size_t beam = 3;
  std::size_t max_combo = 3;

  // [bench]
  std::vector<std::size_t> bench_sizes;
  std::size_t bench_unknowns = 8;

  // [synth]
  SynthConfig synth;
  bool synth_emit_tags = true;

  // globals (flags may override)
  unsigned threads = 0;  // 0 = all cores
  bool verbose = false;

  std::string config_path;   // where this was loaded from
  std::uint64_t config_hash = 0;  // FNV-1a of the raw config bytes

  static RunConfig load(const std::string& path);

  // Loads the function-word lexicon and charset overrides from their files.
  ExtractionConfig make_extraction_config() const;
  // Cleaning config with the lexicon loaded.
  CleaningConfig make_cleaning_config() const;
};

// One token per line, UTF-8, '#' comments. Used for lexicons and charsets.
std::vector<std::string> load_token_file(const std::string& path);
std::set<std::string> load_lexicon(const std::string& path);
std::vector<char> load_charset(const std::string& path);

std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace stylo
