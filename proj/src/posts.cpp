#include "stylo/posts.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "stylo/errors.hpp"

namespace stylo {

namespace {

bool parse_record(const std::string& line, Post& out) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return false;
  for (const char* field : {"author_id", "site_id", "post_id", "text"}) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) return false;
  }
  out.author_id = j["author_id"].get<std::string>();
  out.site_id = j["site_id"].get<std::string>();
  out.post_id = j["post_id"].get<std::string>();
  out.text = j["text"].get<std::string>();
  return !out.author_id.empty() && !out.site_id.empty() && !out.post_id.empty();
}

}  // namespace

IngestResult ingest_posts(std::istream& in) {
  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Post p;
    if (parse_record(line, p)) {
      result.posts.push_back(std::move(p));
    } else {
      ++result.malformed;
    }
  }
  return result;
}

IngestResult ingest_posts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open posts file: " + path);
  return ingest_posts(in);
}

void write_posts(std::ostream& out, const std::vector<Post>& posts) {
  for (const Post& p : posts) {
    nlohmann::json j;
    j["author_id"] = p.author_id;
    j["site_id"] = p.site_id;
    j["post_id"] = p.post_id;
    j["text"] = p.text;
    out << j.dump() << '\n';
  }
}

void write_posts_file(const std::string& path, const std::vector<Post>& posts) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write posts file: " + path);
  write_posts(out, posts);
}

}  // namespace stylo
