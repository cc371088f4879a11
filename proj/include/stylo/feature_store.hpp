#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

// On-disk layout: one directory per site, one consolidated file per category:
//
//   <root>/<site_id>/<NN>_<slug>.tsv
//
// Each file holds one block per author, authors sorted by id:
//
//   #author<TAB><author_id><TAB><category_index><TAB><token_count>
//   <token><TAB><weight>          (token_count lines, tokens sorted)
//
// Weights are written with 17 significant digits so a reload reproduces the
// stored doubles bit-exactly. Files are written whole and atomically replace
// the previous version, so concurrent readers never see a torn file.
class FeatureStore {
 public:
  explicit FeatureStore(std::string root) : root_(std::move(root)) {}

  const std::string& root() const { return root_; }

  // Rewrites all category files of a site from scratch.
  void write_site(const std::string& site_id,
                  const std::vector<ProfileFeatures>& profiles) const;

  // Upserts a single profile (read-modify-write of the site's files).
  void store_profile(const ProfileFeatures& profile) const;

  // Loads one author. `categories` empty means all. Throws NotFoundError when
  // the author has no stored vector in any requested category.
  ProfileFeatures load_profile(const std::string& author_id, const std::string& site_id,
                               const std::set<FeatureCategory>& categories = {}) const;

  // Loads every author of a site, keyed by author id.
  std::map<std::string, ProfileFeatures> load_site(
      const std::string& site_id, const std::set<FeatureCategory>& categories = {}) const;

  static std::string category_file_name(FeatureCategory c);

 private:
  std::string site_dir(const std::string& site_id) const;
  std::string root_;
};

}  // namespace stylo
