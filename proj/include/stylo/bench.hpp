#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stylo/experiment.hpp"
#include "stylo/features.hpp"

namespace stylo {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of y over x. Needs at least two distinct x values.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingOptions {
  std::vector<std::size_t> sizes;      // candidate-set sizes, ascending
  std::size_t unknowns_per_size = 8;   // unknowns timed per size
  std::vector<FeatureCategory> categories;
  std::size_t top_t_floor = 1;
  std::uint64_t seed = 0;              // feature-order shuffle seed
};

struct ScalingRow {
  std::size_t author_size = 0;
  double seconds_per_unknown = 0.0;
  double rss_mb = 0.0;                  // resident set after the runs
  std::vector<double> level_rss_mb;     // sampled at each level boundary
  double top1_lr = 0.0;                 // deterministic side output
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  bool fit_defined = false;  // needs >= 2 sizes
  LineFit fit;               // seconds over author count
};

// Times multilevel linking of single unknowns against growing prefixes of the
// known list. The experiment must provide at least max(sizes) knowns, with
// every timed unknown's true match inside each prefix. Timing runs
// sequentially; memory is sampled at level boundaries.
ScalingReport scaling_bench(const ExperimentSets& experiment,
                            const std::map<std::string, ProfileFeatures>& unknown_features,
                            const std::map<std::string, ProfileFeatures>& known_features,
                            const ScalingOptions& options);

void write_scaling_report(std::ostream& out, const ScalingReport& report);

// Resident set size of this process in bytes (0 when unavailable).
std::size_t current_rss_bytes();

}  // namespace stylo
