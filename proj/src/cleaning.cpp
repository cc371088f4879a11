#include "stylo/cleaning.hpp"

#include <array>

#include "stylo/text.hpp"

namespace stylo {

namespace {

constexpr std::array<std::string_view, 3> kUrlPrefixes = {"http://", "https://", "www."};

// First position >= from where any URL prefix starts, or npos.
std::size_t find_url_start(const std::string& text, std::size_t from) {
  for (std::size_t i = from; i < text.size(); ++i) {
    for (std::string_view prefix : kUrlPrefixes) {
      if (starts_with_ci(std::string_view(text).substr(i), prefix)) return i;
    }
  }
  return std::string::npos;
}

bool is_whitespace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_basic_latin(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u >= 0x20 && u <= 0x7e;
}

}  // namespace

std::string strip_urls_and_mentions(const std::string& text) {
  std::string no_urls;
  no_urls.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t hit = find_url_start(text, pos);
    if (hit == std::string::npos) {
      no_urls.append(text, pos, text.size() - pos);
      break;
    }
    no_urls.append(text, pos, hit - pos);
    std::size_t end = hit;
    while (end < text.size() && !is_whitespace(text[end])) ++end;
    pos = end;
  }

  std::vector<std::string> kept;
  for (std::string& token : split_whitespace(no_urls)) {
    if (token.size() >= 2 && token[0] == '@') continue;
    kept.push_back(std::move(token));
  }
  return join(kept);
}

bool passes_english_heuristic(const std::string& text, const CleaningConfig& config) {
  if (text.empty()) return false;
  std::size_t latin = 0;
  for (char c : text) {
    if (is_basic_latin(c)) ++latin;
  }
  double ratio = static_cast<double>(latin) / static_cast<double>(text.size());
  if (ratio < config.english_threshold) return false;
  if (config.function_words.empty()) return true;  // no lexicon, ratio gate only
  for (const std::string& token : split_whitespace(text)) {
    if (config.function_words.count(normalize_token(token)) > 0) return true;
  }
  return false;
}

std::optional<Post> clean_post(const Post& post, const CleaningConfig& config) {
  std::string cleaned = strip_urls_and_mentions(post.text);
  if (cleaned.empty()) return std::nullopt;
  if (config.filter_retweets_for(post.site_id)) {
    std::size_t end = cleaned.find(' ');
    std::string first = cleaned.substr(0, end);
    if (to_lower(first) == "rt") return std::nullopt;
  }
  if (!passes_english_heuristic(cleaned, config)) return std::nullopt;
  Post out = post;
  out.text = std::move(cleaned);
  return out;
}

}  // namespace stylo
