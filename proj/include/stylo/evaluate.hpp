#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stylo/experiment.hpp"
#include "stylo/multilevel.hpp"

namespace stylo {

// Fraction of results whose final rank is within the top K.
double top_k_ratio(const std::vector<LinkResult>& results, std::size_t k);

struct KStats {
  std::size_t k = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
};

// Top-K linkability ratios aggregated over random feature orderings.
struct LinkabilityReport {
  std::string site_from;
  std::string site_to;
  std::size_t author_size = 0;
  std::size_t n_orderings = 0;
  std::vector<std::uint64_t> ordering_seeds;
  std::vector<std::size_t> k_values;
  std::vector<KStats> per_k;                        // parallel to k_values
  std::vector<std::vector<double>> lr_by_ordering;  // [ordering][k index]
};

struct EvalOptions {
  std::vector<std::size_t> k_values{1, 10, 100};
  std::size_t n_orderings = 10;
  std::uint64_t base_seed = 0;
  std::size_t top_t_floor = 1;
  std::vector<FeatureCategory> categories;  // pool shuffled per ordering
  unsigned threads = 1;
};

// Runs the multilevel linker once per ordering, each with an independently
// shuffled feature order derived from base_seed, and aggregates
// mean/min/max/stddev per K.
LinkabilityReport multi_ordering_run(const ExperimentSets& experiment,
                                     const std::map<std::string, ProfileFeatures>& unknown_features,
                                     const std::map<std::string, ProfileFeatures>& known_features,
                                     const EvalOptions& options);

void write_lr_report_tsv(std::ostream& out, const LinkabilityReport& report);
void write_lr_report_json(std::ostream& out, const LinkabilityReport& report);

// Single-feature baseline plus greedy combination search.
struct FeatureStudy {
  // Top-1 ratio of every category alone, in index order.
  std::vector<std::pair<FeatureCategory, double>> single_top1;
  // Evaluated combinations (subsets of the beam) with their Top-1 ratios.
  std::vector<std::pair<std::vector<FeatureCategory>, double>> combos;
  // Argmax over singles and combos; ties prefer fewer categories, then
  // lexicographically smaller index sequences.
  std::vector<FeatureCategory> best;
  double best_lr = 0.0;
};

struct HillClimbOptions {
  std::size_t beam = 3;      // best singles carried into combination search
  std::size_t max_size = 3;  // largest union evaluated
  std::vector<FeatureCategory> categories;
  unsigned threads = 1;
};

FeatureStudy hill_climb_features(const ExperimentSets& experiment,
                                 const std::map<std::string, ProfileFeatures>& unknown_features,
                                 const std::map<std::string, ProfileFeatures>& known_features,
                                 const HillClimbOptions& options);

void write_feature_study(std::ostream& out, const FeatureStudy& study);

// Top-1 ratio of plain chi-square ranking with a fixed category set; the
// baseline the study and the acceptance gate compare against.
double baseline_top1(const ExperimentSets& experiment,
                     const std::map<std::string, ProfileFeatures>& unknown_features,
                     const std::map<std::string, ProfileFeatures>& known_features,
                     const std::set<FeatureCategory>& categories, unsigned threads = 1);

}  // namespace stylo
