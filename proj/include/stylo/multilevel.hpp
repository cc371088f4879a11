#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stylo/experiment.hpp"
#include "stylo/features.hpp"

namespace stylo {

// Iterative re-ranking: one feature category per level, candidate set halved
// between levels (floor division, clamped below by top_t_floor).
struct MultiLevelConfig {
  std::vector<FeatureCategory> feature_order;  // no duplicates
  std::size_t top_t_floor = 1;
  // Optional observer invoked after each executed level; used by the scaling
  // bench to sample memory. Must be thread-safe under parallel runs.
  std::function<void(int level)> level_hook;
};

// Builds a shuffled order over `pool` from a seed.
std::vector<FeatureCategory> shuffled_feature_order(std::vector<FeatureCategory> pool,
                                                    std::uint64_t seed);

struct LevelTrace {
  int level = 0;  // 0-based executed level
  FeatureCategory category = FeatureCategory::kLetterUni;
  std::size_t candidate_count = 0;
  std::size_t position = 0;  // 0-based rank of the tracked account at this level
};

struct LinkResult {
  std::string unknown_id;
  std::size_t final_rank = 0;  // 1-based, within the finalization level's candidates
  int finalized_level = 0;
  std::vector<LevelTrace> trace;
};

// Level 0 ranks all knowns with the first usable category; each later level
// halves topT and, while the tracked account's 0-based position stays below
// topT, re-ranks the previous level's top topT candidates with the next
// category alone. Once the position reaches topT the rank is final.
// Categories absent from the unknown are skipped without consuming a halving
// step. `true_known_id` is the tracked account (Alg-style evaluation).
LinkResult multilevel_link(const ProfileFeatures& unknown,
                           const std::vector<const ProfileFeatures*>& knowns,
                           const std::string& true_known_id,
                           const MultiLevelConfig& config);

// One LinkResult per unknown in the experiment, tracking its true match.
// Knowns without stored features participate with empty vectors. Parallel
// execution yields results identical to a sequential run.
std::vector<LinkResult> multilevel_run(const ExperimentSets& experiment,
                                       const std::map<std::string, ProfileFeatures>& unknown_features,
                                       const std::map<std::string, ProfileFeatures>& known_features,
                                       const MultiLevelConfig& config,
                                       unsigned threads = 1);

// Audit export: unknown_id<TAB>level<TAB>category<TAB>candidate_count<TAB>position.
void write_trace(std::ostream& out, const std::vector<LinkResult>& results);

// Link summary export: unknown_id<TAB>final_rank<TAB>finalized_level.
void write_link_results(std::ostream& out, const std::vector<LinkResult>& results);

}  // namespace stylo
