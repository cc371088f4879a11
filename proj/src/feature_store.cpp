#include "stylo/feature_store.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/text.hpp"

namespace stylo {

namespace fs = std::filesystem;

namespace {

std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

double parse_weight(const std::string& s, const std::string& where) {
  char* end = nullptr;
  double w = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0' || !(w > 0.0)) {
    throw IntegrityError(where + ": bad weight '" + s + "'");
  }
  return w;
}

void check_token(const std::string& token, const std::string& author) {
  if (token.empty() || token.find('\t') != std::string::npos ||
      token.find('\n') != std::string::npos) {
    throw ValidationError("unstorable token for author '" + author + "'");
  }
}

// Reads every author block of one category file. Returns author -> vector.
std::map<std::string, FeatureVector> read_category_file(const std::string& path,
                                                        FeatureCategory category) {
  std::map<std::string, FeatureVector> out;
  std::ifstream in(path);
  if (!in) return out;  // a missing category file simply has no records

  std::string line;
  std::size_t line_no = 0;
  auto where = [&] { return path + ":" + std::to_string(line_no); };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> header = split(line, '\t');
    if (header.size() != 4 || header[0] != "#author") {
      throw IntegrityError(where() + ": expected #author header");
    }
    const std::string& author = header[1];
    if (author.empty()) throw IntegrityError(where() + ": empty author id");
    if (header[2] != std::to_string(category_index(category))) {
      throw IntegrityError(where() + ": category mismatch, got '" + header[2] + "'");
    }
    std::size_t count = 0;
    try {
      count = std::stoull(header[3]);
    } catch (const std::exception&) {
      throw IntegrityError(where() + ": bad token count '" + header[3] + "'");
    }

    std::vector<FeatureVector::Entry> entries;
    entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(in, line)) {
        throw IntegrityError(where() + ": truncated block for author '" + author + "'");
      }
      ++line_no;
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw IntegrityError(where() + ": expected token<TAB>weight");
      }
      std::string token = line.substr(0, tab);
      double w = parse_weight(line.substr(tab + 1), where());
      if (!entries.empty() && token <= entries.back().first) {
        throw IntegrityError(where() + ": tokens out of order");
      }
      entries.emplace_back(std::move(token), w);
    }
    if (out.count(author) > 0) {
      throw IntegrityError(where() + ": duplicate block for author '" + author + "'");
    }
    FeatureVector v(category);
    if (!entries.empty()) v = FeatureVector::from_entries(category, std::move(entries));
    out.emplace(author, std::move(v));
  }
  return out;
}

void write_category_file(const std::string& path, FeatureCategory category,
                         const std::map<std::string, FeatureVector>& by_author) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream outf(tmp, std::ios::trunc);
    if (!outf) throw InputError("cannot write feature store file: " + tmp);
    for (const auto& [author, vec] : by_author) {
      if (vec.empty()) continue;
      check_token(author, author);
      outf << "#author\t" << author << '\t' << category_index(category) << '\t'
           << vec.size() << '\n';
      for (const auto& [token, weight] : vec.entries()) {
        check_token(token, author);
        outf << token << '\t' << format_weight(weight) << '\n';
      }
    }
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string FeatureStore::category_file_name(FeatureCategory c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d_", category_index(c));
  return std::string(buf) + std::string(category_slug(c)) + ".tsv";
}

std::string FeatureStore::site_dir(const std::string& site_id) const {
  if (site_id.empty() || site_id.find('/') != std::string::npos) {
    throw ValidationError("site id unusable as a directory name: '" + site_id + "'");
  }
  return (fs::path(root_) / site_id).string();
}

void FeatureStore::write_site(const std::string& site_id,
                              const std::vector<ProfileFeatures>& profiles) const {
  std::string dir = site_dir(site_id);
  fs::create_directories(dir);
  for (FeatureCategory c : all_categories()) {
    std::map<std::string, FeatureVector> by_author;
    for (const ProfileFeatures& pf : profiles) {
      const FeatureVector* v = pf.find(c);
      if (v != nullptr && !v->empty()) by_author.emplace(pf.author_id, *v);
    }
    std::string path = (fs::path(dir) / category_file_name(c)).string();
    if (by_author.empty()) {
      fs::remove(path);
      continue;
    }
    write_category_file(path, c, by_author);
  }
}

void FeatureStore::store_profile(const ProfileFeatures& profile) const {
  std::string dir = site_dir(profile.site_id);
  fs::create_directories(dir);
  for (FeatureCategory c : all_categories()) {
    std::string path = (fs::path(dir) / category_file_name(c)).string();
    std::map<std::string, FeatureVector> by_author = read_category_file(path, c);
    const FeatureVector* v = profile.find(c);
    if (v != nullptr && !v->empty()) {
      by_author[profile.author_id] = *v;
    } else {
      by_author.erase(profile.author_id);
    }
    if (by_author.empty()) {
      fs::remove(path);
      continue;
    }
    write_category_file(path, c, by_author);
  }
}

ProfileFeatures FeatureStore::load_profile(const std::string& author_id,
                                           const std::string& site_id,
                                           const std::set<FeatureCategory>& categories) const {
  ProfileFeatures out;
  out.author_id = author_id;
  out.site_id = site_id;
  std::string dir = site_dir(site_id);
  for (FeatureCategory c : all_categories()) {
    if (!categories.empty() && categories.count(c) == 0) continue;
    std::string path = (fs::path(dir) / category_file_name(c)).string();
    std::map<std::string, FeatureVector> by_author = read_category_file(path, c);
    auto it = by_author.find(author_id);
    if (it != by_author.end()) out.vectors.emplace(c, std::move(it->second));
  }
  if (out.vectors.empty()) {
    throw NotFoundError("no stored features for author '" + author_id + "' on site '" +
                        site_id + "'");
  }
  return out;
}

std::map<std::string, ProfileFeatures> FeatureStore::load_site(
    const std::string& site_id, const std::set<FeatureCategory>& categories) const {
  std::map<std::string, ProfileFeatures> out;
  std::string dir = site_dir(site_id);
  for (FeatureCategory c : all_categories()) {
    if (!categories.empty() && categories.count(c) == 0) continue;
    std::string path = (fs::path(dir) / category_file_name(c)).string();
    for (auto& [author, vec] : read_category_file(path, c)) {
      ProfileFeatures& pf = out[author];
      if (pf.author_id.empty()) {
        pf.author_id = author;
        pf.site_id = site_id;
      }
      pf.vectors.emplace(c, std::move(vec));
    }
  }
  return out;
}

}  // namespace stylo
