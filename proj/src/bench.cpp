#include "stylo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "stylo/errors.hpp"
#include "stylo/multilevel.hpp"
#include "stylo/rng.hpp"

namespace stylo {

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("least squares needs at least two points");
  }
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("least squares needs distinct x values");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double mean_y = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double pred = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

std::size_t current_rss_bytes() {
  std::ifstream in("/proc/self/statm");
  if (!in) return 0;
  std::size_t total_pages = 0, resident_pages = 0;
  in >> total_pages >> resident_pages;
  return resident_pages * 4096;
}

ScalingReport scaling_bench(const ExperimentSets& experiment,
                            const std::map<std::string, ProfileFeatures>& unknown_features,
                            const std::map<std::string, ProfileFeatures>& known_features,
                            const ScalingOptions& options) {
  if (options.sizes.empty()) throw ValidationError("no bench sizes configured");
  std::size_t max_size = *std::max_element(options.sizes.begin(), options.sizes.end());
  if (experiment.knowns.size() < max_size) {
    throw ValidationError("bench needs " + std::to_string(max_size) +
                          " known profiles, found " +
                          std::to_string(experiment.knowns.size()));
  }

  std::map<std::string, std::string> match_of;
  for (const auto& [id1, id2] : experiment.truth.pairs) match_of[id1] = id2;

  std::size_t n_unknowns = std::min(options.unknowns_per_size, experiment.unknowns.size());
  // Matched knowns lead the known list in unknown order, so unknown i's match
  // is inside every prefix as long as i stays below the smallest size.
  n_unknowns = std::min(n_unknowns,
                        *std::min_element(options.sizes.begin(), options.sizes.end()));
  if (n_unknowns == 0) throw ValidationError("bench needs at least one unknown account");

  ScalingReport report;
  for (std::size_t size : options.sizes) {
    std::vector<const ProfileFeatures*> knowns;
    std::vector<ProfileFeatures> placeholders;
    placeholders.reserve(size);
    knowns.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      const AuthorProfile& profile = experiment.knowns[i];
      auto it = known_features.find(profile.author_id);
      if (it != known_features.end()) {
        knowns.push_back(&it->second);
      } else {
        ProfileFeatures empty;
        empty.author_id = profile.author_id;
        empty.site_id = profile.site_id;
        placeholders.push_back(std::move(empty));
        knowns.push_back(&placeholders.back());
      }
    }

    std::vector<std::vector<std::size_t>> level_rss;
    MultiLevelConfig config;
    config.feature_order = shuffled_feature_order(options.categories, options.seed);
    config.top_t_floor = options.top_t_floor;
    config.level_hook = [&](int level) {
      std::size_t l = static_cast<std::size_t>(level);
      if (level_rss.empty()) level_rss.emplace_back();
      auto& current = level_rss.back();
      if (l < current.size()) return;
      current.push_back(current_rss_bytes());
    };

    ScalingRow row;
    row.author_size = size;
    double total_seconds = 0.0;
    std::size_t top1_hits = 0;
    for (std::size_t u = 0; u < n_unknowns; ++u) {
      const std::string& id = experiment.unknowns[u].author_id;
      auto feat = unknown_features.find(id);
      if (feat == unknown_features.end()) {
        throw NotFoundError("no stored features for unknown account '" + id + "'");
      }
      level_rss.emplace_back();
      auto start = std::chrono::steady_clock::now();
      LinkResult result = multilevel_link(feat->second, knowns, match_of.at(id), config);
      auto stop = std::chrono::steady_clock::now();
      total_seconds += std::chrono::duration<double>(stop - start).count();
      if (result.final_rank == 1) ++top1_hits;
    }
    row.seconds_per_unknown = total_seconds / static_cast<double>(n_unknowns);
    row.top1_lr = static_cast<double>(top1_hits) / static_cast<double>(n_unknowns);
    row.rss_mb = static_cast<double>(current_rss_bytes()) / (1024.0 * 1024.0);

    // Mean RSS per level over the timed unknowns.
    std::size_t max_levels = 0;
    for (const auto& samples : level_rss) max_levels = std::max(max_levels, samples.size());
    for (std::size_t l = 0; l < max_levels; ++l) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& samples : level_rss) {
        if (l < samples.size()) {
          sum += static_cast<double>(samples[l]);
          ++count;
        }
      }
      row.level_rss_mb.push_back(count ? sum / count / (1024.0 * 1024.0) : 0.0);
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<double> xs, ys;
  for (const ScalingRow& row : report.rows) {
    xs.push_back(static_cast<double>(row.author_size));
    ys.push_back(row.seconds_per_unknown);
  }
  std::sort(xs.begin(), xs.end());
  bool distinct = std::adjacent_find(xs.begin(), xs.end()) == xs.end();
  if (report.rows.size() >= 2 && distinct) {
    xs.clear();
    ys.clear();
    for (const ScalingRow& row : report.rows) {
      xs.push_back(static_cast<double>(row.author_size));
      ys.push_back(row.seconds_per_unknown);
    }
    report.fit = least_squares(xs, ys);
    report.fit_defined = true;
  }
  return report;
}

void write_scaling_report(std::ostream& out, const ScalingReport& report) {
  out << "author_size\tseconds_per_unknown\trss_mb\ttop1_lr\tlevel_rss_mb\n";
  char buf[64];
  for (const ScalingRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f\t%.2f\t%.6g", row.seconds_per_unknown, row.rss_mb,
                  row.top1_lr);
    out << row.author_size << '\t' << buf << '\t';
    for (std::size_t i = 0; i < row.level_rss_mb.size(); ++i) {
      if (i > 0) out << ',';
      std::snprintf(buf, sizeof(buf), "%.2f", row.level_rss_mb[i]);
      out << buf;
    }
    out << '\n';
  }
  if (report.fit_defined) {
    std::snprintf(buf, sizeof(buf), "%.9g\t%.9g\t%.6f", report.fit.slope,
                  report.fit.intercept, report.fit.r_squared);
    out << "# fit slope\tintercept\tr_squared\n# " << buf << '\n';
  } else {
    out << "# fit undefined (needs at least two distinct sizes)\n";
  }
}

}  // namespace stylo
