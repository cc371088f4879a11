#include "stylo/ranker.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "stylo/errors.hpp"

namespace stylo {

namespace {

// Merge join over two token-sorted entry lists, continuing an accumulator.
// A token present on one side only contributes its weight exactly
// ((x - 0)^2 / (x + 0) == x), which also keeps singleton terms exact.
double accumulate_chi_square(const std::vector<FeatureVector::Entry>& a,
                             const std::vector<FeatureVector::Entry>& b, double acc) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int cmp = a[i].first.compare(b[j].first);
    if (cmp < 0) {
      acc += a[i].second;
      ++i;
    } else if (cmp > 0) {
      acc += b[j].second;
      ++j;
    } else {
      double d = a[i].second - b[j].second;
      double s = a[i].second + b[j].second;
      acc += d * d / s;
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) acc += a[i].second;
  for (; j < b.size(); ++j) acc += b[j].second;
  return acc;
}

const std::vector<FeatureVector::Entry>& entries_or_empty(const ProfileFeatures& pf,
                                                          FeatureCategory c) {
  static const std::vector<FeatureVector::Entry> kEmpty;
  const FeatureVector* v = pf.find(c);
  return v == nullptr ? kEmpty : v->entries();
}

}  // namespace

double chi_square_distance(const FeatureVector& u, const FeatureVector& v) {
  if (u.category() != v.category()) {
    throw ValidationError("chi-square distance across categories: " +
                          std::string(category_slug(u.category())) + " vs " +
                          std::string(category_slug(v.category())));
  }
  return accumulate_chi_square(u.entries(), v.entries(), 0.0);
}

double combined_distance(const ProfileFeatures& u, const ProfileFeatures& v,
                         const std::set<FeatureCategory>& categories) {
  double acc = 0.0;
  for (FeatureCategory c : categories) {  // std::set iterates in index order
    acc = accumulate_chi_square(entries_or_empty(u, c), entries_or_empty(v, c), acc);
  }
  return acc;
}

std::size_t RankedList::rank_of(const std::string& known_id) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first == known_id) return i + 1;
  }
  throw NotFoundError("'" + known_id + "' is not in the ranked list of '" + unknown_id + "'");
}

RankedList rank_known(const ProfileFeatures& unknown,
                      const std::vector<const ProfileFeatures*>& candidates,
                      const std::set<FeatureCategory>& categories) {
  RankedList out;
  out.unknown_id = unknown.author_id;
  out.entries.reserve(candidates.size());
  for (const ProfileFeatures* candidate : candidates) {
    out.entries.emplace_back(candidate->author_id,
                             combined_distance(unknown, *candidate, categories));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  return out;
}

void write_ranked_lists(std::ostream& out, const std::vector<RankedList>& lists) {
  out << "unknown_id\trank\tknown_id\tdistance\n";
  char buf[40];
  for (const RankedList& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.15g", list.entries[i].second);
      out << list.unknown_id << '\t' << (i + 1) << '\t' << list.entries[i].first << '\t'
          << buf << '\n';
    }
  }
}

}  // namespace stylo
