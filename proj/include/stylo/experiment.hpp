#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stylo/profiles.hpp"

namespace stylo {

// One-to-one author pairs (site1 id, site2 id) established out of band.
struct MatchSet {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool contains_site1(const std::string& id) const;
  bool contains_site2(const std::string& id) const;
};

struct GroundTruthOptions {
  char delimiter = '\t';
  bool has_header = false;
};

// Two-column delimited file. Repeated identical lines collapse to one pair;
// an id matched to two different counterparts is a fatal conflict.
MatchSet parse_ground_truth(std::istream& in, const GroundTruthOptions& options,
                            const std::string& source_name);
MatchSet load_ground_truth(const std::string& path, const GroundTruthOptions& options = {});

void write_ground_truth(std::ostream& out, const MatchSet& truth, char delimiter = '\t');

// The evaluation universe: every unknown on site 1 has exactly one true
// match among the knowns on site 2; the knowns are padded with pollution
// accounts up to author_size.
struct ExperimentSets {
  std::vector<AuthorProfile> unknowns;
  std::vector<AuthorProfile> knowns;
  MatchSet truth;  // restricted to retained accounts
  std::size_t author_size = 0;
  std::uint64_t seed = 0;
};

// unknowns = matched profiles on site 1; knowns = matched profiles on site 2
// plus (author_size - matched) pollution profiles sampled uniformly without
// replacement from the remaining site-2 profiles. Deterministic in
// (inputs, seed).
ExperimentSets select_experiment_sets(const std::vector<AuthorProfile>& site1_profiles,
                                      const std::vector<AuthorProfile>& site2_profiles,
                                      const MatchSet& truth, std::size_t author_size,
                                      std::uint64_t seed);

}  // namespace stylo
