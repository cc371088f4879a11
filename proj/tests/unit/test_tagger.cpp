#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/tagger.hpp"

using namespace stylo;

TEST_CASE("baseline_tag rule table") {
  CHECK(baseline_tag({"the"}) == std::vector<std::string>{"DET"});
  CHECK(baseline_tag({"42"}) == std::vector<std::string>{"NUM"});
  CHECK(baseline_tag({"quickly"}) == std::vector<std::string>{"ADV"});
  CHECK(baseline_tag({"running"}) == std::vector<std::string>{"VERB"});
  CHECK(baseline_tag({"jumped"}) == std::vector<std::string>{"VERB"});
  CHECK(baseline_tag({"dogs"}) == std::vector<std::string>{"NOUN"});
  CHECK(baseline_tag({"table"}) == std::vector<std::string>{"NOUN"});
  CHECK(baseline_tag({"!!!"}) == std::vector<std::string>{"PUNCT"});
  CHECK(baseline_tag({"they"}) == std::vector<std::string>{"PRON"});
  CHECK(baseline_tag({"with"}) == std::vector<std::string>{"ADP"});
  CHECK(baseline_tag({"and"}) == std::vector<std::string>{"CONJ"});
}

TEST_CASE("baseline_tag normalizes before lookup") {
  CHECK(baseline_tag({"The,"}) == std::vector<std::string>{"DET"});
  CHECK(baseline_tag({"\"Quickly\""}) == std::vector<std::string>{"ADV"});
}

TEST_CASE("baseline_tag is total and stays inside the tagset") {
  std::vector<std::string> tokens = {"the", "cat", "sat",   "42",  "!!",
                                     "^",   "a1b", "oddly", "mix3d"};
  std::vector<std::string> tags = baseline_tag(tokens);
  REQUIRE(tags.size() == tokens.size());
  const auto& tagset = builtin_tagset();
  for (const std::string& t : tags) {
    CHECK(std::find(tagset.begin(), tagset.end(), t) != tagset.end());
  }
  // determinism
  CHECK(baseline_tag(tokens) == tags);
}

TEST_CASE("parse_external_tags reads blocks") {
  std::istringstream in(
      "#post p1\n"
      "the\tDT\n"
      "cat\tNN\n"
      "sat\tVBD\n"
      "#post p2\n"
      "ok\tUH\n");
  std::vector<TaggedPost> posts = parse_external_tags(in, TagChannel::kPosB, "test");
  REQUIRE(posts.size() == 2);
  CHECK(posts[0].post_id == "p1");
  CHECK(posts[0].tokens.size() == 3);
  CHECK(posts[0].tags.size() == 3);
  CHECK(posts[0].tags[2] == "VBD");
  CHECK(posts[1].tokens.size() == 1);
}

TEST_CASE("parse_external_tags reports the offending line") {
  std::istringstream in(
      "#post p1\n"
      "the\tDT\n"
      "missing-tab\n");
  try {
    parse_external_tags(in, TagChannel::kPosB, "tags.txt");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("tags.txt:3") != std::string::npos);
  }
}

TEST_CASE("parse_external_tags edge cases") {
  std::istringstream empty("");
  CHECK(parse_external_tags(empty, TagChannel::kPosB, "test").empty());

  std::istringstream headerless("the\tDT\n");
  CHECK_THROWS_AS(parse_external_tags(headerless, TagChannel::kPosB, "test"), InputError);

  std::istringstream anonymous("#post \n");
  CHECK_THROWS_AS(parse_external_tags(anonymous, TagChannel::kPosB, "test"), InputError);
}

TEST_CASE("external tags round-trip through the writer") {
  std::vector<TaggedPost> posts = {
      {"p1", {"a", "b"}, {"T1", "T2"}, TagChannel::kPosB},
      {"p2", {"c"}, {"T3"}, TagChannel::kPosB},
  };
  std::ostringstream out;
  write_external_tags(out, posts);
  std::istringstream in(out.str());
  std::vector<TaggedPost> reread = parse_external_tags(in, TagChannel::kPosB, "test");
  REQUIRE(reread.size() == 2);
  CHECK(reread[0].tokens == posts[0].tokens);
  CHECK(reread[0].tags == posts[0].tags);
  CHECK(reread[1].tags == posts[1].tags);
}

TEST_CASE("build_tag_index keys by post id") {
  std::vector<TaggedPost> posts = {{"p1", {"a"}, {"T1"}, TagChannel::kPosB}};
  ExternalTagIndex index = build_tag_index(posts);
  REQUIRE(index.count("p1") == 1);
  CHECK(index.at("p1") == std::vector<std::string>{"T1"});
}
