#include "stylo/tagger.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "stylo/errors.hpp"
#include "stylo/text.hpp"

namespace stylo {

namespace {

// Closed-class words with fixed tags. Lookup happens after lowercasing and
// edge-punctuation stripping.
const std::unordered_map<std::string, std::string>& closed_class() {
  static const std::unordered_map<std::string, std::string> table = {
      // determiners
      {"the", "DET"},     {"a", "DET"},        {"an", "DET"},     {"this", "DET"},
      {"that", "DET"},    {"these", "DET"},    {"those", "DET"},  {"each", "DET"},
      {"every", "DET"},   {"some", "DET"},     {"any", "DET"},    {"no", "DET"},
      {"another", "DET"}, {"such", "DET"},     {"both", "DET"},   {"either", "DET"},
      {"neither", "DET"},
      // pronouns
      {"i", "PRON"},      {"you", "PRON"},     {"he", "PRON"},    {"she", "PRON"},
      {"it", "PRON"},     {"we", "PRON"},      {"they", "PRON"},  {"me", "PRON"},
      {"him", "PRON"},    {"her", "PRON"},     {"us", "PRON"},    {"them", "PRON"},
      {"my", "PRON"},     {"your", "PRON"},    {"his", "PRON"},   {"its", "PRON"},
      {"our", "PRON"},    {"their", "PRON"},   {"mine", "PRON"},  {"yours", "PRON"},
      {"ours", "PRON"},   {"theirs", "PRON"},  {"who", "PRON"},   {"whom", "PRON"},
      {"whose", "PRON"},  {"which", "PRON"},   {"what", "PRON"},  {"myself", "PRON"},
      {"yourself", "PRON"}, {"himself", "PRON"}, {"herself", "PRON"},
      {"itself", "PRON"}, {"ourselves", "PRON"}, {"themselves", "PRON"},
      {"someone", "PRON"}, {"anyone", "PRON"}, {"everyone", "PRON"},
      {"nobody", "PRON"}, {"something", "PRON"}, {"anything", "PRON"},
      {"everything", "PRON"}, {"nothing", "PRON"},
      // adpositions
      {"of", "ADP"},      {"in", "ADP"},       {"to", "ADP"},     {"for", "ADP"},
      {"with", "ADP"},    {"on", "ADP"},       {"at", "ADP"},     {"by", "ADP"},
      {"from", "ADP"},    {"about", "ADP"},    {"into", "ADP"},   {"over", "ADP"},
      {"after", "ADP"},   {"under", "ADP"},    {"between", "ADP"}, {"through", "ADP"},
      {"during", "ADP"},  {"before", "ADP"},   {"above", "ADP"},  {"below", "ADP"},
      {"against", "ADP"}, {"among", "ADP"},    {"within", "ADP"}, {"without", "ADP"},
      {"toward", "ADP"},  {"towards", "ADP"},  {"upon", "ADP"},   {"across", "ADP"},
      {"behind", "ADP"},  {"beyond", "ADP"},   {"near", "ADP"},   {"since", "ADP"},
      {"until", "ADP"},   {"via", "ADP"},      {"per", "ADP"},    {"off", "ADP"},
      {"onto", "ADP"},    {"along", "ADP"},    {"around", "ADP"}, {"beside", "ADP"},
      // conjunctions
      {"and", "CONJ"},    {"or", "CONJ"},      {"but", "CONJ"},   {"nor", "CONJ"},
      {"so", "CONJ"},     {"yet", "CONJ"},     {"because", "CONJ"}, {"although", "CONJ"},
      {"though", "CONJ"}, {"while", "CONJ"},   {"if", "CONJ"},    {"unless", "CONJ"},
      {"whereas", "CONJ"}, {"whether", "CONJ"}, {"when", "CONJ"}, {"where", "CONJ"},
      {"than", "CONJ"},   {"as", "CONJ"},
      // particles and auxiliaries, folded into PRT/VERB
      {"not", "PRT"},     {"n't", "PRT"},      {"up", "PRT"},     {"down", "PRT"},
      {"out", "PRT"},
      {"be", "VERB"},     {"is", "VERB"},      {"am", "VERB"},    {"are", "VERB"},
      {"was", "VERB"},    {"were", "VERB"},    {"been", "VERB"},  {"being", "VERB"},
      {"have", "VERB"},   {"has", "VERB"},     {"had", "VERB"},   {"do", "VERB"},
      {"does", "VERB"},   {"did", "VERB"},     {"will", "VERB"},  {"would", "VERB"},
      {"shall", "VERB"},  {"should", "VERB"},  {"can", "VERB"},   {"could", "VERB"},
      {"may", "VERB"},    {"might", "VERB"},   {"must", "VERB"},
      // common adverbs that do not end in -ly
      {"very", "ADV"},    {"too", "ADV"},      {"quite", "ADV"},  {"rather", "ADV"},
      {"also", "ADV"},    {"just", "ADV"},     {"only", "ADV"},   {"even", "ADV"},
      {"still", "ADV"},   {"again", "ADV"},    {"here", "ADV"},   {"there", "ADV"},
      {"now", "ADV"},     {"then", "ADV"},     {"always", "ADV"}, {"never", "ADV"},
      {"often", "ADV"},   {"soon", "ADV"},     {"already", "ADV"}, {"perhaps", "ADV"},
  };
  return table;
}

bool all_digits(const std::string& w) {
  if (w.empty()) return false;
  return std::all_of(w.begin(), w.end(), [](char c) { return is_ascii_digit(c); });
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() > suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string tag_one(const std::string& token) {
  bool any_alnum = std::any_of(token.begin(), token.end(),
                               [](char c) { return is_ascii_alnum(c); });
  if (!any_alnum) return "PUNCT";
  std::string w = normalize_token(token);
  if (w.empty()) return "X";
  auto it = closed_class().find(w);
  if (it != closed_class().end()) return it->second;
  if (ends_with(w, "ly")) return "ADV";
  if (ends_with(w, "ing") || ends_with(w, "ed")) return "VERB";
  if (all_digits(w)) return "NUM";
  if (ends_with(w, "s")) return "NOUN";
  return "NOUN";
}

}  // namespace

const std::vector<std::string>& builtin_tagset() {
  static const std::vector<std::string> tags = {"NOUN", "VERB", "ADJ",  "ADV",
                                                "PRON", "DET",  "ADP",  "NUM",
                                                "CONJ", "PRT",  "PUNCT", "X"};
  return tags;
}

std::vector<std::string> baseline_tag(const std::vector<std::string>& tokens) {
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (const std::string& t : tokens) tags.push_back(tag_one(t));
  return tags;
}

std::vector<TaggedPost> parse_external_tags(std::istream& in, TagChannel channel,
                                            const std::string& source_name) {
  std::vector<TaggedPost> posts;
  std::string line;
  std::size_t line_no = 0;
  TaggedPost* current = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (line.rfind("#post ", 0) == 0) {
      std::string id = trim(line.substr(6));
      if (id.empty()) {
        throw InputError(source_name + ":" + std::to_string(line_no) +
                         ": #post header without a post id");
      }
      posts.push_back(TaggedPost{id, {}, {}, channel});
      current = &posts.back();
      continue;
    }
    if (current == nullptr) {
      throw InputError(source_name + ":" + std::to_string(line_no) +
                       ": token line before any #post header");
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw InputError(source_name + ":" + std::to_string(line_no) +
                       ": expected token<TAB>tag");
    }
    std::string tag = trim(line.substr(tab + 1));
    if (tag.empty() || tag.find('\t') != std::string::npos) {
      throw InputError(source_name + ":" + std::to_string(line_no) +
                       ": expected token<TAB>tag");
    }
    current->tokens.push_back(line.substr(0, tab));
    current->tags.push_back(std::move(tag));
  }
  return posts;
}

std::vector<TaggedPost> ingest_external_tags(const std::string& path, TagChannel channel) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open external tags file: " + path);
  return parse_external_tags(in, channel, path);
}

void write_external_tags(std::ostream& out, const std::vector<TaggedPost>& posts) {
  for (const TaggedPost& p : posts) {
    out << "#post " << p.post_id << '\n';
    for (std::size_t i = 0; i < p.tokens.size(); ++i) {
      out << p.tokens[i] << '\t' << p.tags[i] << '\n';
    }
  }
}

ExternalTagIndex build_tag_index(const std::vector<TaggedPost>& posts) {
  ExternalTagIndex index;
  for (const TaggedPost& p : posts) index[p.post_id] = p.tags;
  return index;
}

}  // namespace stylo
