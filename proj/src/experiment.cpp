#include "stylo/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "stylo/errors.hpp"
#include "stylo/rng.hpp"
#include "stylo/text.hpp"

namespace stylo {

bool MatchSet::contains_site1(const std::string& id) const {
  return std::any_of(pairs.begin(), pairs.end(),
                     [&](const auto& p) { return p.first == id; });
}

bool MatchSet::contains_site2(const std::string& id) const {
  return std::any_of(pairs.begin(), pairs.end(),
                     [&](const auto& p) { return p.second == id; });
}

MatchSet parse_ground_truth(std::istream& in, const GroundTruthOptions& options,
                            const std::string& source_name) {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;
  MatchSet out;

  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<std::string> fields = split(stripped, options.delimiter);
    if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
      throw ValidationError(source_name + ":" + std::to_string(line_no) +
                            ": expected two delimited columns");
    }
    std::string a = trim(fields[0]);
    std::string b = trim(fields[1]);

    auto fwd = forward.find(a);
    auto bwd = backward.find(b);
    if (fwd != forward.end() || bwd != backward.end()) {
      bool same_pair = fwd != forward.end() && fwd->second == b;
      if (same_pair) continue;  // repeated identical line
      throw ValidationError(source_name + ":" + std::to_string(line_no) +
                            ": conflicting pair, '" + a + "' or '" + b +
                            "' already matched");
    }
    forward[a] = b;
    backward[b] = a;
    out.pairs.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

MatchSet load_ground_truth(const std::string& path, const GroundTruthOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open ground truth file: " + path);
  return parse_ground_truth(in, options, path);
}

void write_ground_truth(std::ostream& out, const MatchSet& truth, char delimiter) {
  for (const auto& [a, b] : truth.pairs) {
    out << a << delimiter << b << '\n';
  }
}

ExperimentSets select_experiment_sets(const std::vector<AuthorProfile>& site1_profiles,
                                      const std::vector<AuthorProfile>& site2_profiles,
                                      const MatchSet& truth, std::size_t author_size,
                                      std::uint64_t seed) {
  std::map<std::string, const AuthorProfile*> site1_by_id;
  for (const AuthorProfile& p : site1_profiles) site1_by_id[p.author_id] = &p;
  std::map<std::string, const AuthorProfile*> site2_by_id;
  for (const AuthorProfile& p : site2_profiles) site2_by_id[p.author_id] = &p;

  ExperimentSets out;
  out.author_size = author_size;
  out.seed = seed;

  std::set<std::string> matched_site2;
  for (const auto& [id1, id2] : truth.pairs) {
    auto it1 = site1_by_id.find(id1);
    auto it2 = site2_by_id.find(id2);
    if (it1 == site1_by_id.end() || it2 == site2_by_id.end()) continue;
    out.unknowns.push_back(*it1->second);
    out.knowns.push_back(*it2->second);
    out.truth.pairs.emplace_back(id1, id2);
    matched_site2.insert(id2);
  }

  if (author_size < out.truth.pairs.size()) {
    throw ValidationError("author_size " + std::to_string(author_size) +
                          " is below the matched account count " +
                          std::to_string(out.truth.pairs.size()));
  }
  if (author_size > site2_profiles.size()) {
    throw ValidationError("author_size " + std::to_string(author_size) +
                          " exceeds the " + std::to_string(site2_profiles.size()) +
                          " available site-2 profiles");
  }

  // Pollution pool: remaining site-2 profiles, in id order for determinism.
  std::vector<const AuthorProfile*> pool;
  for (const auto& [id, profile] : site2_by_id) {
    if (matched_site2.count(id) == 0) pool.push_back(profile);
  }
  std::size_t needed = author_size - out.truth.pairs.size();

  Rng rng(seed);
  // Partial Fisher-Yates: the first `needed` slots are a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < needed; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
    out.knowns.push_back(*pool[i]);
  }
  return out;
}

}  // namespace stylo
