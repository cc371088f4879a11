#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace stylo {

// One user-generated text unit: a tweet, a review or a photo annotation.
struct Post {
  std::string author_id;
  std::string site_id;
  std::string post_id;
  std::string text;
};

struct IngestResult {
  std::vector<Post> posts;
  std::size_t malformed = 0;  // skipped input lines
};

// Reads line-delimited JSON records with string fields author_id, site_id,
// post_id and text. Records missing a required field (or with an empty id)
// are skipped and counted in `malformed`.
IngestResult ingest_posts(std::istream& in);

// Same, from a file path. Throws InputError if the file cannot be opened.
IngestResult ingest_posts_file(const std::string& path);

void write_posts(std::ostream& out, const std::vector<Post>& posts);
void write_posts_file(const std::string& path, const std::vector<Post>& posts);

}  // namespace stylo
