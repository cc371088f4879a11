#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

// Symmetric histogram chi-square: sum over the union of supports of
// (u_t - v_t)^2 / (u_t + v_t). 0 iff the maps are identical; at most 2 for
// normalized vectors. Throws ValidationError on category mismatch.
double chi_square_distance(const FeatureVector& u, const FeatureVector& v);

// Sum of per-category chi-square distances. A category missing from one
// profile counts as an empty vector; missing from both contributes 0.
// Terms accumulate in ascending category order so the total is bit-identical
// to a single chi-square over category-prefixed concatenated vectors.
double combined_distance(const ProfileFeatures& u, const ProfileFeatures& v,
                         const std::set<FeatureCategory>& categories);

struct RankedList {
  std::string unknown_id;
  // (known_id, distance), distances nondecreasing, ties by ascending id.
  std::vector<std::pair<std::string, double>> entries;

  // 1-based position; throws NotFoundError when absent.
  std::size_t rank_of(const std::string& known_id) const;
};

RankedList rank_known(const ProfileFeatures& unknown,
                      const std::vector<const ProfileFeatures*>& candidates,
                      const std::set<FeatureCategory>& categories);

// Delimited export: unknown_id<TAB>rank<TAB>known_id<TAB>distance.
void write_ranked_lists(std::ostream& out, const std::vector<RankedList>& lists);

}  // namespace stylo
