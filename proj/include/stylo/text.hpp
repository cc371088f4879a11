#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stylo {

inline bool is_ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alnum(char c) { return is_ascii_letter(c) || is_ascii_digit(c); }

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s);

// Split on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

// Split on every occurrence of delim; keeps empty fields.
std::vector<std::string> split(std::string_view s, char delim);

std::string join(const std::vector<std::string>& parts, char sep = ' ');

std::string trim(std::string_view s);

// Lowercase and strip leading/trailing non-alphanumeric bytes. "Dog," -> "dog".
std::string normalize_token(std::string_view token);

bool starts_with_ci(std::string_view s, std::string_view prefix);

}  // namespace stylo
