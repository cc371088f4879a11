#include "stylo/multilevel.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "stylo/errors.hpp"
#include "stylo/parallel.hpp"
#include "stylo/ranker.hpp"
#include "stylo/rng.hpp"

namespace stylo {

std::vector<FeatureCategory> shuffled_feature_order(std::vector<FeatureCategory> pool,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(pool);
  return pool;
}

namespace {

struct Scored {
  std::size_t known_index;
  double distance;
};

// Ranks `candidates` (indices into knowns) by the given single category,
// ties by ascending author id. Returns the sorted index list and the 0-based
// position of the tracked index.
std::vector<std::size_t> rank_level(const ProfileFeatures& unknown,
                                    const std::vector<const ProfileFeatures*>& knowns,
                                    const std::vector<std::size_t>& candidates,
                                    FeatureCategory category, std::size_t tracked,
                                    std::size_t& tracked_position) {
  std::set<FeatureCategory> single{category};
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (std::size_t idx : candidates) {
    scored.push_back({idx, combined_distance(unknown, *knowns[idx], single)});
  }
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return knowns[a.known_index]->author_id < knowns[b.known_index]->author_id;
  });
  std::vector<std::size_t> order;
  order.reserve(scored.size());
  tracked_position = scored.size();
  for (std::size_t i = 0; i < scored.size(); ++i) {
    order.push_back(scored[i].known_index);
    if (scored[i].known_index == tracked) tracked_position = i;
  }
  return order;
}

}  // namespace

LinkResult multilevel_link(const ProfileFeatures& unknown,
                           const std::vector<const ProfileFeatures*>& knowns,
                           const std::string& true_known_id,
                           const MultiLevelConfig& config) {
  if (config.feature_order.empty()) {
    throw ValidationError("multilevel link needs a nonempty feature order");
  }
  {
    std::set<FeatureCategory> seen;
    for (FeatureCategory c : config.feature_order) {
      if (!seen.insert(c).second) {
        throw ValidationError("duplicate category in feature order: " +
                              std::string(category_slug(c)));
      }
    }
  }
  if (knowns.empty()) {
    throw ValidationError("multilevel link needs at least one known account");
  }

  std::vector<FeatureCategory> usable;
  for (FeatureCategory c : config.feature_order) {
    if (unknown.has(c)) usable.push_back(c);
  }
  if (usable.empty()) {
    throw ValidationError("unknown account '" + unknown.author_id +
                          "' has none of the ordered feature categories");
  }

  std::size_t tracked = knowns.size();
  for (std::size_t i = 0; i < knowns.size(); ++i) {
    if (knowns[i]->author_id == true_known_id) {
      tracked = i;
      break;
    }
  }
  if (tracked == knowns.size()) {
    throw ValidationError("tracked account '" + true_known_id + "' is not among the knowns");
  }

  LinkResult result;
  result.unknown_id = unknown.author_id;

  std::vector<std::size_t> candidates(knowns.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;

  std::size_t position = 0;
  std::vector<std::size_t> order =
      rank_level(unknown, knowns, candidates, usable[0], tracked, position);
  result.trace.push_back({0, usable[0], order.size(), position});
  if (config.level_hook) config.level_hook(0);

  std::size_t top_t = knowns.size();
  bool finalized = false;
  for (std::size_t level = 1; level < usable.size() && !finalized; ++level) {
    top_t = std::max(top_t / 2, config.top_t_floor);
    if (position < top_t) {
      std::size_t keep = std::min(top_t, order.size());
      std::vector<std::size_t> survivors(order.begin(), order.begin() + keep);
      order = rank_level(unknown, knowns, survivors, usable[level], tracked, position);
      result.trace.push_back({static_cast<int>(level), usable[level], order.size(), position});
      if (config.level_hook) config.level_hook(static_cast<int>(level));
    } else {
      finalized = true;  // no further improvement possible, report as is
    }
  }

  result.finalized_level = result.trace.back().level;
  result.final_rank = result.trace.back().position + 1;
  return result;
}

std::vector<LinkResult> multilevel_run(const ExperimentSets& experiment,
                                       const std::map<std::string, ProfileFeatures>& unknown_features,
                                       const std::map<std::string, ProfileFeatures>& known_features,
                                       const MultiLevelConfig& config, unsigned threads) {
  // Placeholders for knowns with no stored features: empty vectors, maximal
  // distance per nonempty category.
  std::vector<ProfileFeatures> placeholders;
  std::vector<const ProfileFeatures*> knowns;
  knowns.reserve(experiment.knowns.size());
  placeholders.reserve(experiment.knowns.size());
  for (const AuthorProfile& profile : experiment.knowns) {
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

  std::map<std::string, std::string> match_of;
  for (const auto& [id1, id2] : experiment.truth.pairs) match_of[id1] = id2;

  std::vector<LinkResult> results(experiment.unknowns.size());
  parallel_for(experiment.unknowns.size(), threads, [&](std::size_t i) {
    const AuthorProfile& profile = experiment.unknowns[i];
    auto feat = unknown_features.find(profile.author_id);
    if (feat == unknown_features.end()) {
      throw NotFoundError("no stored features for unknown account '" + profile.author_id + "'");
    }
    auto truth = match_of.find(profile.author_id);
    if (truth == match_of.end()) {
      throw ValidationError("unknown account '" + profile.author_id + "' has no true match");
    }
    results[i] = multilevel_link(feat->second, knowns, truth->second, config);
  });
  return results;
}

void write_trace(std::ostream& out, const std::vector<LinkResult>& results) {
  out << "unknown_id\tlevel\tcategory\tcandidate_count\tposition\n";
  for (const LinkResult& r : results) {
    for (const LevelTrace& t : r.trace) {
      out << r.unknown_id << '\t' << t.level << '\t' << category_index(t.category) << '\t'
          << t.candidate_count << '\t' << t.position << '\n';
    }
  }
}

void write_link_results(std::ostream& out, const std::vector<LinkResult>& results) {
  out << "unknown_id\tfinal_rank\tfinalized_level\n";
  for (const LinkResult& r : results) {
    out << r.unknown_id << '\t' << r.final_rank << '\t' << r.finalized_level << '\n';
  }
}

}  // namespace stylo
