#include "stylo/config.hpp"

#include <fstream>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/text.hpp"

namespace stylo {

IniFile IniFile::parse(std::istream& in, const std::string& source_name) {
  IniFile out;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']' || stripped.size() < 3) {
        throw ValidationError(source_name + ":" + std::to_string(line_no) +
                              ": malformed section header");
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      out.sections_[section];
      continue;
    }
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(source_name + ":" + std::to_string(line_no) +
                            ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError(source_name + ":" + std::to_string(line_no) + ": empty key");
    }
    out.sections_[section][key] = value;
  }
  return out;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  return parse(in, path);
}

std::optional<std::string> IniFile::get(const std::string& section,
                                        const std::string& key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return std::nullopt;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return std::nullopt;
  return kit->second;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

std::map<std::string, std::string> IniFile::get_prefixed(const std::string& section,
                                                         const std::string& prefix) const {
  std::map<std::string, std::string> out;
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return out;
  std::string needle = prefix + ".";
  for (const auto& [key, value] : sit->second) {
    if (key.rfind(needle, 0) == 0 && key.size() > needle.size()) {
      out[key.substr(needle.size())] = value;
    }
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& where) {
  std::string v = to_lower(value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ValidationError(where + ": expected a boolean, got '" + value + "'");
}

std::uint64_t parse_u64(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected an unsigned integer, got '" + value + "'");
  }
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(where + ": expected a number, got '" + value + "'");
  }
}

std::vector<std::size_t> parse_size_list(const std::string& value, const std::string& where) {
  std::vector<std::size_t> out;
  for (const std::string& field : split(value, ',')) {
    std::string token = trim(field);
    if (token.empty()) continue;
    out.push_back(static_cast<std::size_t>(parse_u64(token, where)));
  }
  if (out.empty()) throw ValidationError(where + ": expected a comma-separated list");
  return out;
}

namespace {

std::vector<FeatureCategory> parse_categories(const std::string& value,
                                              const std::string& where) {
  std::set<FeatureCategory> seen;
  for (const std::string& field : split(value, ',')) {
    std::string token = trim(field);
    if (token.empty()) continue;
    std::optional<FeatureCategory> c;
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
      c = category_from_index(static_cast<int>(parse_u64(token, where)));
    } else {
      c = category_from_slug(token);
    }
    if (!c) throw ValidationError(where + ": unknown feature category '" + token + "'");
    seen.insert(*c);
  }
  if (seen.empty()) throw ValidationError(where + ": no feature categories enabled");
  return {seen.begin(), seen.end()};
}

char parse_delimiter(const std::string& value, const std::string& where) {
  if (value == "tab") return '\t';
  if (value == "comma") return ',';
  if (value == "space") return ' ';
  if (value == "semicolon") return ';';
  if (value.size() == 1) return value[0];
  throw ValidationError(where + ": unknown delimiter '" + value + "'");
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream raw(path, std::ios::binary);
  if (!raw) throw InputError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << raw.rdbuf();
  std::string bytes = buffer.str();

  std::istringstream stream(bytes);
  IniFile ini = IniFile::parse(stream, path);

  RunConfig cfg;
  cfg.config_path = path;
  cfg.config_hash = fnv1a_hash(bytes);

  cfg.posts_path = ini.get_or("paths", "posts", "");
  cfg.ground_truth_path = ini.get_or("paths", "ground_truth", "");
  cfg.store_dir = ini.get_or("paths", "store", "");
  cfg.run_dir = ini.get_or("paths", "run_dir", "");
  cfg.function_words_path = ini.get_or("paths", "function_words", "");
  cfg.special_chars_path = ini.get_or("paths", "special_chars", "");
  cfg.punctuation_path = ini.get_or("paths", "punctuation", "");
  cfg.pos_b_tags = ini.get_prefixed("paths", "pos_b_tags");
  if (auto v = ini.get("paths", "ground_truth_delimiter")) {
    cfg.ground_truth_delimiter = parse_delimiter(*v, path + ": ground_truth_delimiter");
  }
  if (auto v = ini.get("paths", "ground_truth_header")) {
    cfg.ground_truth_header = parse_bool(*v, path + ": ground_truth_header");
  }

  if (auto v = ini.get("cleaning", "min_words")) {
    cfg.cleaning.min_words = static_cast<std::size_t>(parse_u64(*v, path + ": min_words"));
  }
  if (auto v = ini.get("cleaning", "english_threshold")) {
    cfg.cleaning.english_threshold = parse_double(*v, path + ": english_threshold");
    if (cfg.cleaning.english_threshold < 0.0 || cfg.cleaning.english_threshold > 1.0) {
      throw ValidationError(path + ": english_threshold must be in [0, 1]");
    }
  }
  {
    auto flags = ini.get_prefixed("cleaning", "filter_retweets");
    if (!flags.empty()) {
      cfg.cleaning.retweet_sites.clear();
      for (const auto& [site, value] : flags) {
        if (parse_bool(value, path + ": filter_retweets." + site)) {
          cfg.cleaning.retweet_sites.insert(site);
        }
      }
    }
  }

  if (auto v = ini.get("features", "enabled")) {
    cfg.categories = parse_categories(*v, path + ": features.enabled");
  } else {
    cfg.categories = all_categories();
  }

  cfg.site1 = ini.get_or("experiment", "site1", "");
  cfg.site2 = ini.get_or("experiment", "site2", "");
  if (auto v = ini.get("experiment", "author_size")) {
    cfg.author_size = static_cast<std::size_t>(parse_u64(*v, path + ": author_size"));
  }
  if (auto v = ini.get("experiment", "k_values")) {
    cfg.k_values = parse_size_list(*v, path + ": k_values");
    for (std::size_t k : cfg.k_values) {
      if (k < 1) throw ValidationError(path + ": k_values must be positive");
    }
  }
  if (auto v = ini.get("experiment", "n_orderings")) {
    cfg.n_orderings = static_cast<std::size_t>(parse_u64(*v, path + ": n_orderings"));
  }
  if (auto v = ini.get("experiment", "seed")) {
    cfg.seed = parse_u64(*v, path + ": seed");
  }
  if (auto v = ini.get("experiment", "top_t_floor")) {
    cfg.top_t_floor = static_cast<std::size_t>(parse_u64(*v, path + ": top_t_floor"));
    if (cfg.top_t_floor < 1) throw ValidationError(path + ": top_t_floor must be >= 1");
  }

  if (auto v = ini.get("hill_climb", "beam")) {
    cfg.beam = static_cast<std::size_t>(parse_u64(*v, path + ": beam"));
  }
  if (auto v = ini.get("hill_climb", "max_size")) {
    cfg.max_combo = static_cast<std::size_t>(parse_u64(*v, path + ": max_size"));
  }

  if (auto v = ini.get("bench", "sizes")) {
    cfg.bench_sizes = parse_size_list(*v, path + ": bench.sizes");
  }
  if (auto v = ini.get("bench", "unknowns_per_size")) {
    cfg.bench_unknowns = static_cast<std::size_t>(parse_u64(*v, path + ": unknowns_per_size"));
  }

  SynthConfig& s = cfg.synth;
  if (auto v = ini.get("synth", "matched_authors")) {
    s.matched_authors = static_cast<std::size_t>(parse_u64(*v, path + ": matched_authors"));
  }
  if (auto v = ini.get("synth", "extra_known")) {
    s.extra_known = static_cast<std::size_t>(parse_u64(*v, path + ": extra_known"));
  }
  if (auto v = ini.get("synth", "words_per_side")) {
    s.words_per_side = static_cast<std::size_t>(parse_u64(*v, path + ": words_per_side"));
  }
  if (auto v = ini.get("synth", "signal")) {
    s.signal = parse_double(*v, path + ": signal");
  }
  if (auto v = ini.get("synth", "vocab_size")) {
    s.vocab_size = static_cast<std::size_t>(parse_u64(*v, path + ": vocab_size"));
  }
  if (auto v = ini.get("synth", "preferred_words")) {
    s.preferred_words = static_cast<std::size_t>(parse_u64(*v, path + ": preferred_words"));
  }
  if (auto v = ini.get("synth", "punctuation_prob")) {
    s.punctuation_prob = parse_double(*v, path + ": punctuation_prob");
  }
  if (auto v = ini.get("synth", "special_prob")) {
    s.special_prob = parse_double(*v, path + ": special_prob");
  }
  if (auto v = ini.get("synth", "digit_prob")) {
    s.digit_prob = parse_double(*v, path + ": digit_prob");
  }
  if (auto v = ini.get("synth", "post_words_min")) {
    s.post_words_min = static_cast<std::size_t>(parse_u64(*v, path + ": post_words_min"));
  }
  if (auto v = ini.get("synth", "post_words_max")) {
    s.post_words_max = static_cast<std::size_t>(parse_u64(*v, path + ": post_words_max"));
  }
  if (auto v = ini.get("synth", "seed")) {
    s.seed = parse_u64(*v, path + ": synth.seed");
  }
  s.site1 = cfg.site1.empty() ? s.site1 : cfg.site1;
  s.site2 = cfg.site2.empty() ? s.site2 : cfg.site2;
  if (auto v = ini.get("synth", "emit_tags")) {
    cfg.synth_emit_tags = parse_bool(*v, path + ": emit_tags");
  }

  if (auto v = ini.get("run", "threads")) {
    cfg.threads = static_cast<unsigned>(parse_u64(*v, path + ": threads"));
  }
  if (auto v = ini.get("run", "verbose")) {
    cfg.verbose = parse_bool(*v, path + ": verbose");
  }
  return cfg;
}

ExtractionConfig RunConfig::make_extraction_config() const {
  ExtractionConfig extraction;
  extraction.enabled = {categories.begin(), categories.end()};
  if (!function_words_path.empty()) {
    extraction.function_words = load_lexicon(function_words_path);
  }
  if (!special_chars_path.empty()) {
    extraction.special_chars = load_charset(special_chars_path);
  }
  if (!punctuation_path.empty()) {
    extraction.punctuation = load_charset(punctuation_path);
  }
  return extraction;
}

CleaningConfig RunConfig::make_cleaning_config() const {
  CleaningConfig out = cleaning;
  if (!function_words_path.empty()) {
    out.function_words = load_lexicon(function_words_path);
  }
  return out;
}

std::vector<std::string> load_token_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open token file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    std::string token = trim(line);
    if (token.empty() || token[0] == '#') continue;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::set<std::string> load_lexicon(const std::string& path) {
  std::set<std::string> out;
  for (const std::string& token : load_token_file(path)) out.insert(to_lower(token));
  if (out.empty()) throw ValidationError("lexicon file is empty: " + path);
  return out;
}

std::vector<char> load_charset(const std::string& path) {
  std::vector<char> out;
  for (const std::string& token : load_token_file(path)) {
    if (token.size() != 1) {
      throw ValidationError(path + ": charset entries must be single characters, got '" +
                            token + "'");
    }
    out.push_back(token[0]);
  }
  if (out.empty()) throw ValidationError("charset file is empty: " + path);
  return out;
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace stylo
