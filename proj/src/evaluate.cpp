#include "stylo/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "stylo/errors.hpp"
#include "stylo/parallel.hpp"
#include "stylo/ranker.hpp"
#include "stylo/rng.hpp"

namespace stylo {

double top_k_ratio(const std::vector<LinkResult>& results, std::size_t k) {
  if (results.empty()) throw ValidationError("top-k ratio over an empty result set");
  if (k < 1) throw ValidationError("k must be at least 1");
  std::size_t hits = 0;
  for (const LinkResult& r : results) {
    if (r.final_rank <= k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

namespace {

struct CandidateSet {
  std::vector<ProfileFeatures> placeholders;
  std::vector<const ProfileFeatures*> knowns;
  std::map<std::string, std::string> match_of;  // unknown id -> known id
};

CandidateSet resolve_candidates(const ExperimentSets& experiment,
                                const std::map<std::string, ProfileFeatures>& known_features) {
  CandidateSet set;
  set.placeholders.reserve(experiment.knowns.size());
  set.knowns.reserve(experiment.knowns.size());
  for (const AuthorProfile& profile : experiment.knowns) {
    auto it = known_features.find(profile.author_id);
    if (it != known_features.end()) {
      set.knowns.push_back(&it->second);
    } else {
      ProfileFeatures empty;
      empty.author_id = profile.author_id;
      empty.site_id = profile.site_id;
      set.placeholders.push_back(std::move(empty));
      set.knowns.push_back(&set.placeholders.back());
    }
  }
  for (const auto& [id1, id2] : experiment.truth.pairs) set.match_of[id1] = id2;
  return set;
}

const ProfileFeatures& unknown_features_of(
    const std::map<std::string, ProfileFeatures>& unknown_features, const std::string& id) {
  auto it = unknown_features.find(id);
  if (it == unknown_features.end()) {
    throw NotFoundError("no stored features for unknown account '" + id + "'");
  }
  return it->second;
}

// Top-1 ratio of chi-square ranking over a fixed category set.
double ranking_top1(const ExperimentSets& experiment, const CandidateSet& set,
                    const std::map<std::string, ProfileFeatures>& unknown_features,
                    const std::set<FeatureCategory>& categories, unsigned threads) {
  std::vector<unsigned char> hit(experiment.unknowns.size(), 0);
  parallel_for(experiment.unknowns.size(), threads, [&](std::size_t i) {
    const std::string& id = experiment.unknowns[i].author_id;
    RankedList list = rank_known(unknown_features_of(unknown_features, id), set.knowns,
                                 categories);
    hit[i] = list.rank_of(set.match_of.at(id)) == 1 ? 1 : 0;
  });
  std::size_t hits = 0;
  for (unsigned char h : hit) hits += h;
  return experiment.unknowns.empty()
             ? 0.0
             : static_cast<double>(hits) / static_cast<double>(experiment.unknowns.size());
}

}  // namespace

LinkabilityReport multi_ordering_run(const ExperimentSets& experiment,
                                     const std::map<std::string, ProfileFeatures>& unknown_features,
                                     const std::map<std::string, ProfileFeatures>& known_features,
                                     const EvalOptions& options) {
  if (options.n_orderings < 1) throw ValidationError("n_orderings must be at least 1");
  if (options.categories.empty()) throw ValidationError("no feature categories configured");

  LinkabilityReport report;
  report.site_from = experiment.unknowns.empty() ? "" : experiment.unknowns.front().site_id;
  report.site_to = experiment.knowns.empty() ? "" : experiment.knowns.front().site_id;
  report.author_size = experiment.author_size;
  report.n_orderings = options.n_orderings;
  report.k_values = options.k_values;

  for (std::size_t i = 0; i < options.n_orderings; ++i) {
    std::uint64_t seed = derive_seed(options.base_seed, i);
    report.ordering_seeds.push_back(seed);

    MultiLevelConfig config;
    config.feature_order = shuffled_feature_order(options.categories, seed);
    config.top_t_floor = options.top_t_floor;
    std::vector<LinkResult> results = multilevel_run(experiment, unknown_features,
                                                     known_features, config, options.threads);
    std::vector<double> lrs;
    lrs.reserve(options.k_values.size());
    for (std::size_t k : options.k_values) lrs.push_back(top_k_ratio(results, k));
    report.lr_by_ordering.push_back(std::move(lrs));
  }

  for (std::size_t ki = 0; ki < options.k_values.size(); ++ki) {
    KStats stats;
    stats.k = options.k_values[ki];
    double sum = 0.0, sum_sq = 0.0;
    stats.min = 1.0;
    stats.max = 0.0;
    for (const auto& lrs : report.lr_by_ordering) {
      double lr = lrs[ki];
      sum += lr;
      sum_sq += lr * lr;
      stats.min = std::min(stats.min, lr);
      stats.max = std::max(stats.max, lr);
    }
    double n = static_cast<double>(report.lr_by_ordering.size());
    stats.mean = sum / n;
    double variance = std::max(0.0, sum_sq / n - stats.mean * stats.mean);
    stats.stddev = std::sqrt(variance);
    report.per_k.push_back(stats);
  }
  return report;
}

namespace {

std::string format_lr(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_lr_report_tsv(std::ostream& out, const LinkabilityReport& report) {
  out << "# direction\t" << report.site_from << "\t" << report.site_to << '\n';
  out << "# author_size\t" << report.author_size << '\n';
  out << "# n_orderings\t" << report.n_orderings << '\n';
  out << "# ordering_seeds";
  for (std::uint64_t s : report.ordering_seeds) out << '\t' << s;
  out << '\n';
  out << "k\tmean\tmin\tmax\tstddev\n";
  for (const KStats& s : report.per_k) {
    out << s.k << '\t' << format_lr(s.mean) << '\t' << format_lr(s.min) << '\t'
        << format_lr(s.max) << '\t' << format_lr(s.stddev) << '\n';
  }
  out << "ordering";
  for (std::size_t k : report.k_values) out << "\tlr@" << k;
  out << '\n';
  for (std::size_t i = 0; i < report.lr_by_ordering.size(); ++i) {
    out << i;
    for (double lr : report.lr_by_ordering[i]) out << '\t' << format_lr(lr);
    out << '\n';
  }
}

void write_lr_report_json(std::ostream& out, const LinkabilityReport& report) {
  nlohmann::ordered_json j;
  j["direction"] = {{"from", report.site_from}, {"to", report.site_to}};
  j["author_size"] = report.author_size;
  j["n_orderings"] = report.n_orderings;
  j["ordering_seeds"] = report.ordering_seeds;
  nlohmann::ordered_json per_k = nlohmann::ordered_json::array();
  for (const KStats& s : report.per_k) {
    per_k.push_back({{"k", s.k},
                     {"mean", s.mean},
                     {"min", s.min},
                     {"max", s.max},
                     {"stddev", s.stddev}});
  }
  j["per_k"] = per_k;
  j["lr_by_ordering"] = report.lr_by_ordering;
  out << j.dump(2) << '\n';
}

FeatureStudy hill_climb_features(const ExperimentSets& experiment,
                                 const std::map<std::string, ProfileFeatures>& unknown_features,
                                 const std::map<std::string, ProfileFeatures>& known_features,
                                 const HillClimbOptions& options) {
  if (options.categories.empty()) throw ValidationError("no feature categories configured");
  CandidateSet set = resolve_candidates(experiment, known_features);

  FeatureStudy study;
  for (FeatureCategory c : options.categories) {
    double lr = ranking_top1(experiment, set, unknown_features, {c}, options.threads);
    study.single_top1.emplace_back(c, lr);
  }

  // Beam: best singles, ties toward the smaller category index.
  std::vector<std::pair<FeatureCategory, double>> order = study.single_top1;
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::size_t beam = std::min(options.beam, order.size());
  std::vector<FeatureCategory> pool;
  for (std::size_t i = 0; i < beam; ++i) pool.push_back(order[i].first);
  std::sort(pool.begin(), pool.end());

  // All subsets of the beam with 2..max_size members.
  std::size_t max_size = std::min<std::size_t>(options.max_size, pool.size());
  for (std::size_t size = 2; size <= max_size; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::set<FeatureCategory> combo;
      for (std::size_t i : pick) combo.insert(pool[i]);
      double lr = ranking_top1(experiment, set, unknown_features, combo, options.threads);
      study.combos.emplace_back(std::vector<FeatureCategory>(combo.begin(), combo.end()), lr);

      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == pool.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  auto better = [](double lr, const std::vector<FeatureCategory>& cats, double best_lr,
                   const std::vector<FeatureCategory>& best) {
    if (lr != best_lr) return lr > best_lr;
    if (cats.size() != best.size()) return cats.size() < best.size();
    return cats < best;
  };
  study.best_lr = -1.0;
  for (const auto& [c, lr] : study.single_top1) {
    std::vector<FeatureCategory> cats{c};
    if (better(lr, cats, study.best_lr, study.best)) {
      study.best = cats;
      study.best_lr = lr;
    }
  }
  for (const auto& [cats, lr] : study.combos) {
    if (better(lr, cats, study.best_lr, study.best)) {
      study.best = cats;
      study.best_lr = lr;
    }
  }
  return study;
}

namespace {

std::string categories_label(const std::vector<FeatureCategory>& cats) {
  std::string label;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (i > 0) label += '&';
    label += std::to_string(category_index(cats[i]));
  }
  return label;
}

}  // namespace

void write_feature_study(std::ostream& out, const FeatureStudy& study) {
  out << "kind\tcategories\ttop1_lr\n";
  for (const auto& [c, lr] : study.single_top1) {
    out << "single\t" << category_index(c) << '\t' << format_lr(lr) << '\n';
  }
  for (const auto& [cats, lr] : study.combos) {
    out << "combo\t" << categories_label(cats) << '\t' << format_lr(lr) << '\n';
  }
  out << "best\t" << categories_label(study.best) << '\t' << format_lr(study.best_lr) << '\n';
}

double baseline_top1(const ExperimentSets& experiment,
                     const std::map<std::string, ProfileFeatures>& unknown_features,
                     const std::map<std::string, ProfileFeatures>& known_features,
                     const std::set<FeatureCategory>& categories, unsigned threads) {
  CandidateSet set = resolve_candidates(experiment, known_features);
  return ranking_top1(experiment, set, unknown_features, categories, threads);
}

}  // namespace stylo
