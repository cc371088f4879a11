#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/evaluate.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

LinkResult result_with_rank(const std::string& id, std::size_t rank) {
  LinkResult r;
  r.unknown_id = id;
  r.final_rank = rank;
  return r;
}

FeatureVector vec(FeatureCategory c, std::vector<std::pair<std::string, double>> entries) {
  return FeatureVector::from_entries(c, std::move(entries));
}

ProfileFeatures profile_with(const std::string& id, std::vector<FeatureVector> vectors) {
  ProfileFeatures pf;
  pf.author_id = id;
  pf.site_id = "s";
  for (FeatureVector& v : vectors) pf.vectors.emplace(v.category(), std::move(v));
  return pf;
}

// Experiment whose unknowns mirror their knowns exactly, with extra noise
// categories of varying quality.
struct Fixture {
  ExperimentSets sets;
  std::map<std::string, ProfileFeatures> unknown_features;
  std::map<std::string, ProfileFeatures> known_features;
};

Fixture identical_pairs_fixture(std::size_t n, const std::vector<FeatureCategory>& cats,
                                std::uint64_t seed) {
  Fixture f;
  Rng rng(seed);
  f.sets.author_size = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::string uid = "u" + std::to_string(100 + i);
    std::string kid = "k" + std::to_string(100 + i);
    AuthorProfile up, kp;
    up.author_id = uid;
    up.site_id = "s1";
    kp.author_id = kid;
    kp.site_id = "s2";
    f.sets.unknowns.push_back(up);
    f.sets.knowns.push_back(kp);
    f.sets.truth.pairs.emplace_back(uid, kid);

    std::vector<FeatureVector> vectors;
    for (FeatureCategory c : cats) {
      std::map<std::string, std::uint64_t> counts;
      for (int t = 0; t < 12; ++t) {
        counts["t" + std::to_string(rng.below(40))] += 1 + rng.below(6);
      }
      vectors.push_back(FeatureVector::from_counts(c, counts));
    }
    ProfileFeatures pf = profile_with(uid, vectors);
    ProfileFeatures kf = pf;
    kf.author_id = kid;
    f.unknown_features[uid] = std::move(pf);
    f.known_features[kid] = std::move(kf);
  }
  return f;
}

}  // namespace

TEST_CASE("top_k_ratio counts ranks within k") {
  std::vector<LinkResult> all_first = {result_with_rank("a", 1), result_with_rank("b", 1)};
  CHECK(top_k_ratio(all_first, 1) == doctest::Approx(1.0));

  std::vector<LinkResult> mixed = {result_with_rank("a", 1), result_with_rank("b", 5),
                                   result_with_rank("c", 30)};
  CHECK(top_k_ratio(mixed, 10) == doctest::Approx(2.0 / 3.0));
  CHECK(top_k_ratio(mixed, 100) == doctest::Approx(1.0));

  // monotone in K
  double prev = 0.0;
  for (std::size_t k = 1; k <= 40; ++k) {
    double lr = top_k_ratio(mixed, k);
    CHECK(lr >= prev);
    prev = lr;
  }
  CHECK_THROWS_AS(top_k_ratio({}, 1), ValidationError);
}

TEST_CASE("multi_ordering_run determinism and aggregation") {
  std::vector<FeatureCategory> cats = {FeatureCategory::kLetterUni, FeatureCategory::kWords,
                                       FeatureCategory::kFunctionWords};
  Fixture f = identical_pairs_fixture(10, cats, 3);

  EvalOptions options;
  options.k_values = {1, 10, 100};
  options.n_orderings = 4;
  options.base_seed = 17;
  options.categories = cats;
  LinkabilityReport report =
      multi_ordering_run(f.sets, f.unknown_features, f.known_features, options);

  CHECK(report.n_orderings == 4);
  REQUIRE(report.lr_by_ordering.size() == 4);
  REQUIRE(report.per_k.size() == 3);

  // identical pairs link perfectly for every ordering
  for (const auto& lrs : report.lr_by_ordering) {
    CHECK(lrs[0] == doctest::Approx(1.0));
  }

  // aggregates match an independent recomputation from the per-ordering rows
  for (std::size_t ki = 0; ki < report.k_values.size(); ++ki) {
    double sum = 0.0, lo = 1.0, hi = 0.0;
    for (const auto& lrs : report.lr_by_ordering) {
      sum += lrs[ki];
      lo = std::min(lo, lrs[ki]);
      hi = std::max(hi, lrs[ki]);
    }
    CHECK(report.per_k[ki].mean == doctest::Approx(sum / 4.0));
    CHECK(report.per_k[ki].min == doctest::Approx(lo));
    CHECK(report.per_k[ki].max == doctest::Approx(hi));
    CHECK(report.per_k[ki].min <= report.per_k[ki].mean);
    CHECK(report.per_k[ki].mean <= report.per_k[ki].max);
  }

  // determinism: identical runs agree
  LinkabilityReport again =
      multi_ordering_run(f.sets, f.unknown_features, f.known_features, options);
  CHECK(again.lr_by_ordering == report.lr_by_ordering);
  CHECK(again.ordering_seeds == report.ordering_seeds);

  // single ordering: mean == min == max
  options.n_orderings = 1;
  LinkabilityReport single =
      multi_ordering_run(f.sets, f.unknown_features, f.known_features, options);
  CHECK(single.per_k[0].mean == single.per_k[0].min);
  CHECK(single.per_k[0].mean == single.per_k[0].max);
  CHECK(single.per_k[0].stddev == doctest::Approx(0.0));

  // removing an ordering can only move min up and max down (or keep them)
  for (std::size_t drop = 0; drop < report.lr_by_ordering.size(); ++drop) {
    for (std::size_t ki = 0; ki < report.k_values.size(); ++ki) {
      double lo = 1.0, hi = 0.0;
      for (std::size_t o = 0; o < report.lr_by_ordering.size(); ++o) {
        if (o == drop) continue;
        lo = std::min(lo, report.lr_by_ordering[o][ki]);
        hi = std::max(hi, report.lr_by_ordering[o][ki]);
      }
      CHECK(lo >= report.per_k[ki].min);
      CHECK(hi <= report.per_k[ki].max);
    }
  }
}

TEST_CASE("lr report serialization is stable") {
  std::vector<FeatureCategory> cats = {FeatureCategory::kWords};
  Fixture f = identical_pairs_fixture(4, cats, 9);
  EvalOptions options;
  options.k_values = {1, 10};
  options.n_orderings = 2;
  options.base_seed = 5;
  options.categories = cats;
  LinkabilityReport report =
      multi_ordering_run(f.sets, f.unknown_features, f.known_features, options);

  std::ostringstream tsv1, tsv2, json1, json2;
  write_lr_report_tsv(tsv1, report);
  write_lr_report_tsv(tsv2, report);
  write_lr_report_json(json1, report);
  write_lr_report_json(json2, report);
  CHECK(tsv1.str() == tsv2.str());
  CHECK(json1.str() == json2.str());
  CHECK(tsv1.str().find("k\tmean\tmin\tmax\tstddev") != std::string::npos);
  CHECK(json1.str().find("\"per_k\"") != std::string::npos);
}

TEST_CASE("hill climb finds the informative category") {
  // words is fully informative; letter-uni is identical for everyone
  std::size_t n = 8;
  Fixture f;
  f.sets.author_size = n;
  FeatureVector shared = vec(FeatureCategory::kLetterUni, {{"a", 0.5}, {"b", 0.5}});
  for (std::size_t i = 0; i < n; ++i) {
    std::string uid = "u" + std::to_string(100 + i);
    std::string kid = "k" + std::to_string(100 + i);
    AuthorProfile up, kp;
    up.author_id = uid;
    up.site_id = "s1";
    kp.author_id = kid;
    kp.site_id = "s2";
    f.sets.unknowns.push_back(up);
    f.sets.knowns.push_back(kp);
    f.sets.truth.pairs.emplace_back(uid, kid);
    FeatureVector words =
        vec(FeatureCategory::kWords, {{"w" + std::to_string(i), 1.0}});
    f.unknown_features[uid] = profile_with(uid, {shared, words});
    f.known_features[kid] = profile_with(kid, {shared, words});
  }

  HillClimbOptions options;
  options.categories = {FeatureCategory::kLetterUni, FeatureCategory::kWords};
  FeatureStudy study =
      hill_climb_features(f.sets, f.unknown_features, f.known_features, options);

  REQUIRE(study.single_top1.size() == 2);
  double words_lr = 0.0;
  for (const auto& [c, lr] : study.single_top1) {
    if (c == FeatureCategory::kWords) words_lr = lr;
  }
  CHECK(words_lr == doctest::Approx(1.0));
  CHECK(study.best_lr == doctest::Approx(1.0));
  // the tie between {words} and {letter_uni, words} resolves to fewer categories
  CHECK(study.best == std::vector<FeatureCategory>{FeatureCategory::kWords});

  // the invariant: best is at least as good as everything evaluated
  for (const auto& [c, lr] : study.single_top1) CHECK(study.best_lr >= lr);
  for (const auto& [cats, lr] : study.combos) CHECK(study.best_lr >= lr);
}

TEST_CASE("hill climb prefers a pair when halves complement") {
  // category A separates authors 0..4, category B separates 5..9; the pair
  // separates everyone
  std::size_t n = 10;
  Fixture f;
  f.sets.author_size = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::string uid = "u" + std::to_string(100 + i);
    std::string kid = "k" + std::to_string(100 + i);
    AuthorProfile up, kp;
    up.author_id = uid;
    up.site_id = "s1";
    kp.author_id = kid;
    kp.site_id = "s2";
    f.sets.unknowns.push_back(up);
    f.sets.knowns.push_back(kp);
    f.sets.truth.pairs.emplace_back(uid, kid);

    FeatureVector a = i < 5 ? vec(FeatureCategory::kLetterUni, {{"a" + std::to_string(i), 1.0}})
                            : vec(FeatureCategory::kLetterUni, {{"common", 1.0}});
    FeatureVector b = i >= 5 ? vec(FeatureCategory::kWords, {{"b" + std::to_string(i), 1.0}})
                             : vec(FeatureCategory::kWords, {{"common", 1.0}});
    f.unknown_features[uid] = profile_with(uid, {a, b});
    f.known_features[kid] = profile_with(kid, {a, b});
  }

  HillClimbOptions options;
  options.categories = {FeatureCategory::kLetterUni, FeatureCategory::kWords};
  FeatureStudy study =
      hill_climb_features(f.sets, f.unknown_features, f.known_features, options);

  std::vector<FeatureCategory> pair = {FeatureCategory::kLetterUni, FeatureCategory::kWords};
  CHECK(study.best == pair);
  CHECK(study.best_lr == doctest::Approx(1.0));
  for (const auto& [c, lr] : study.single_top1) CHECK(lr < 1.0);
}

TEST_CASE("hill climb with a single category degenerates to one row") {
  std::vector<FeatureCategory> cats = {FeatureCategory::kWords};
  Fixture f = identical_pairs_fixture(5, cats, 2);
  HillClimbOptions options;
  options.categories = cats;
  FeatureStudy study =
      hill_climb_features(f.sets, f.unknown_features, f.known_features, options);
  CHECK(study.single_top1.size() == 1);
  CHECK(study.combos.empty());
  CHECK(study.best == cats);

  std::ostringstream out;
  write_feature_study(out, study);
  CHECK(out.str().find("single\t10") != std::string::npos);
  CHECK(out.str().find("best\t10") != std::string::npos);
}

TEST_CASE("baseline equals hill-climb single evaluation") {
  std::vector<FeatureCategory> cats = {FeatureCategory::kWords};
  Fixture f = identical_pairs_fixture(6, cats, 4);
  double direct = baseline_top1(f.sets, f.unknown_features, f.known_features,
                                {FeatureCategory::kWords});
  HillClimbOptions options;
  options.categories = cats;
  FeatureStudy study =
      hill_climb_features(f.sets, f.unknown_features, f.known_features, options);
  CHECK(direct == doctest::Approx(study.single_top1[0].second));
}
