#include <doctest.h>

#include <cmath>

#include "stylo/errors.hpp"
#include "stylo/features.hpp"
#include "stylo/rng.hpp"
#include "stylo/text.hpp"

using namespace stylo;

namespace {

AuthorProfile profile_from_text(const std::string& text) {
  AuthorProfile p;
  p.author_id = "a";
  p.site_id = "s";
  p.tokens = split_whitespace(text);
  if (!p.tokens.empty()) {
    p.post_offsets = {0};
    p.post_ids = {"p0"};
  }
  return p;
}

AuthorProfile profile_from_posts(const std::vector<std::string>& posts) {
  AuthorProfile p;
  p.author_id = "a";
  p.site_id = "s";
  for (std::size_t i = 0; i < posts.size(); ++i) {
    std::vector<std::string> tokens = split_whitespace(posts[i]);
    if (tokens.empty()) continue;
    p.post_offsets.push_back(p.tokens.size());
    p.post_ids.push_back("p" + std::to_string(i));
    for (std::string& t : tokens) p.tokens.push_back(std::move(t));
  }
  return p;
}

double sum_weights(const FeatureVector& v) {
  double sum = 0.0;
  for (const auto& [token, w] : v.entries()) sum += w;
  return sum;
}

}  // namespace

TEST_CASE("category table round-trips") {
  for (FeatureCategory c : all_categories()) {
    CHECK(category_from_index(category_index(c)) == c);
    CHECK(category_from_slug(category_slug(c)) == c);
  }
  CHECK_FALSE(category_from_index(0).has_value());
  CHECK_FALSE(category_from_index(13).has_value());
  CHECK_FALSE(category_from_slug("nope").has_value());
  CHECK(all_categories().size() == kCategoryCount);
}

TEST_CASE("letter unigrams") {
  FeatureVector v = extract_letter_ngrams(profile_from_text("aab"), 1);
  REQUIRE(v.size() == 2);
  CHECK(v.weight("a") == doctest::Approx(2.0 / 3.0));
  CHECK(v.weight("b") == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("letter bigrams do not span non-letters") {
  FeatureVector v = extract_letter_ngrams(profile_from_text("Ab c"), 2);
  REQUIRE(v.size() == 1);
  CHECK(v.weight("ab") == doctest::Approx(1.0));

  // digits and punctuation break runs too
  FeatureVector w = extract_letter_ngrams(profile_from_text("ab1cd"), 2);
  CHECK(w.weight("ab") == doctest::Approx(0.5));
  CHECK(w.weight("cd") == doctest::Approx(0.5));
  CHECK(w.weight("b1") == 0.0);
}

TEST_CASE("letter n-grams of an empty profile") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(extract_letter_ngrams(profile_from_text(""), n).empty());
  }
  CHECK_THROWS_AS(extract_letter_ngrams(profile_from_text("abc"), 5), ValidationError);
}

TEST_CASE("charset frequencies") {
  const std::vector<char>& specials = default_special_chars();
  FeatureVector v =
      extract_charset_freq(profile_from_text("a$b$c#"), specials, FeatureCategory::kSpecialChars);
  REQUIRE(v.size() == 2);
  CHECK(v.weight("$") == doctest::Approx(2.0 / 3.0));
  CHECK(v.weight("#") == doctest::Approx(1.0 / 3.0));

  CHECK(extract_charset_freq(profile_from_text("plain words"), specials,
                             FeatureCategory::kSpecialChars)
            .empty());

  FeatureVector p = extract_charset_freq(profile_from_text("!!"), default_punctuation(),
                                         FeatureCategory::kPunctuation);
  REQUIRE(p.size() == 1);
  CHECK(p.weight("!") == doctest::Approx(1.0));
}

TEST_CASE("default symbol sets have the documented sizes") {
  CHECK(default_special_chars().size() == 20);
  CHECK(default_punctuation().size() == 8);
}

TEST_CASE("function word frequencies") {
  std::set<std::string> lexicon = {"the", "and"};
  FeatureVector v = extract_function_words(profile_from_text("the cat and the dog"), lexicon);
  REQUIRE(v.size() == 2);
  CHECK(v.weight("the") == doctest::Approx(2.0 / 3.0));
  CHECK(v.weight("and") == doctest::Approx(1.0 / 3.0));

  CHECK(extract_function_words(profile_from_text("no hits here"), lexicon).empty());

  FeatureVector folded = extract_function_words(profile_from_text("The, the"), lexicon);
  REQUIRE(folded.size() == 1);
  CHECK(folded.weight("the") == doctest::Approx(1.0));
}

TEST_CASE("word frequencies") {
  FeatureVector v = extract_words(profile_from_text("a b a"));
  REQUIRE(v.size() == 2);
  CHECK(v.weight("a") == doctest::Approx(2.0 / 3.0));
  CHECK(v.weight("b") == doctest::Approx(1.0 / 3.0));

  CHECK(extract_words(profile_from_text("")).empty());

  FeatureVector single = extract_words(profile_from_text("token"));
  REQUIRE(single.size() == 1);
  CHECK(single.weight("token") == doctest::Approx(1.0));
}

TEST_CASE("tag n-grams") {
  std::vector<std::vector<std::string>> runs = {{"D", "N", "V"}};
  FeatureVector bi = extract_tag_ngrams(runs, 2, FeatureCategory::kPosABi);
  REQUIRE(bi.size() == 2);
  CHECK(bi.weight("D N") == doctest::Approx(0.5));
  CHECK(bi.weight("N V") == doctest::Approx(0.5));

  CHECK(extract_tag_ngrams({{"N"}}, 2, FeatureCategory::kPosABi).empty());

  FeatureVector uni = extract_tag_ngrams({{"N", "N"}}, 1, FeatureCategory::kPosAUni);
  REQUIRE(uni.size() == 1);
  CHECK(uni.weight("N") == doctest::Approx(1.0));
}

TEST_CASE("tag n-grams never span runs") {
  std::vector<std::vector<std::string>> split_runs = {{"D", "N"}, {"V"}};
  FeatureVector bi = extract_tag_ngrams(split_runs, 2, FeatureCategory::kPosABi);
  REQUIRE(bi.size() == 1);
  CHECK(bi.weight("D N") == doctest::Approx(1.0));
  CHECK(bi.weight("N V") == 0.0);
}

TEST_CASE("vectors normalize to one with positive weights") {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    // random text over a small alphabet with symbols sprinkled in
    std::string text;
    std::size_t len = 50 + rng.below(200);
    const char alphabet[] = "abcdefg .,!$#";
    for (std::size_t i = 0; i < len; ++i) {
      text += alphabet[rng.below(sizeof(alphabet) - 1)];
    }
    AuthorProfile profile = profile_from_text(text);
    ExtractionConfig config;
    config.function_words = {"a", "the"};
    ProfileFeatures pf = extract_all(profile, config);
    for (const auto& [category, vec] : pf.vectors) {
      CHECK(!vec.empty());
      CHECK(sum_weights(vec) == doctest::Approx(1.0).epsilon(1e-9));
      for (const auto& [token, w] : vec.entries()) {
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
      }
    }
  }
}

TEST_CASE("letter alphabet respects the 26^n bound") {
  Rng rng(7);
  std::string text;
  for (int i = 0; i < 3000; ++i) {
    text += static_cast<char>('a' + rng.below(26));
    if (rng.below(6) == 0) text += ' ';
  }
  AuthorProfile profile = profile_from_text(text);
  std::size_t bound = 1;
  for (int n = 1; n <= 4; ++n) {
    bound *= 26;
    FeatureVector v = extract_letter_ngrams(profile, n);
    CHECK(v.size() <= bound);
    for (const auto& [token, w] : v.entries()) {
      CHECK(token.size() == static_cast<std::size_t>(n));
      for (char c : token) CHECK((c >= 'a' && c <= 'z'));
    }
  }
}

TEST_CASE("extraction is pure and duplication-invariant") {
  AuthorProfile profile = profile_from_posts({"the cat! sat?", "on the $mat 42"});
  ExtractionConfig config;
  config.function_words = {"the", "on"};

  ProfileFeatures once = extract_all(profile, config);
  ProfileFeatures again = extract_all(profile, config);
  CHECK(once == again);

  // duplicate the whole post stream: frequencies must not move
  AuthorProfile doubled = profile;
  for (std::size_t i = 0; i < profile.post_count(); ++i) {
    auto [begin, end] = profile.post_span(i);
    doubled.post_offsets.push_back(doubled.tokens.size());
    doubled.post_ids.push_back("dup" + std::to_string(i));
    for (std::size_t t = begin; t < end; ++t) doubled.tokens.push_back(profile.tokens[t]);
  }
  ProfileFeatures doubled_pf = extract_all(doubled, config);
  REQUIRE(doubled_pf.vectors.size() == once.vectors.size());
  for (const auto& [category, vec] : once.vectors) {
    const FeatureVector* dv = doubled_pf.find(category);
    REQUIRE(dv != nullptr);
    REQUIRE(dv->size() == vec.size());
    for (const auto& [token, w] : vec.entries()) {
      CHECK(dv->weight(token) == doctest::Approx(w).epsilon(1e-12));
    }
  }
}

TEST_CASE("extract_all honors category enables and external tags") {
  AuthorProfile profile = profile_from_posts({"the cat", "a dog"});
  ExtractionConfig config;
  config.function_words = {"the", "a"};
  config.enabled = {FeatureCategory::kWords, FeatureCategory::kPosBUni};

  SUBCASE("without external tags the B channel is missing") {
    ProfileFeatures pf = extract_all(profile, config);
    CHECK(pf.vectors.size() == 1);
    CHECK(pf.has(FeatureCategory::kWords));
    CHECK_FALSE(pf.has(FeatureCategory::kPosBUni));
  }

  SUBCASE("external tags feed the B channel") {
    ExternalTagIndex tags;
    tags["p0"] = {"X1", "X2"};
    tags["p1"] = {"X1", "X1"};
    ProfileFeatures pf = extract_all(profile, config, &tags);
    REQUIRE(pf.has(FeatureCategory::kPosBUni));
    CHECK(pf.find(FeatureCategory::kPosBUni)->weight("X1") == doctest::Approx(0.75));
  }

  SUBCASE("partial tag coverage uses the covered posts") {
    ExternalTagIndex tags;
    tags["p1"] = {"X9"};
    ProfileFeatures pf = extract_all(profile, config, &tags);
    REQUIRE(pf.has(FeatureCategory::kPosBUni));
    CHECK(pf.find(FeatureCategory::kPosBUni)->weight("X9") == doctest::Approx(1.0));
  }
}

TEST_CASE("from_entries validates and merges") {
  CHECK_THROWS_AS(FeatureVector::from_entries(FeatureCategory::kWords, {{"a", 0.0}}),
                  ValidationError);
  FeatureVector v = FeatureVector::from_entries(FeatureCategory::kWords,
                                                {{"b", 0.25}, {"a", 0.5}, {"b", 0.25}});
  REQUIRE(v.size() == 2);
  CHECK(v.entries()[0].first == "a");
  CHECK(v.weight("b") == doctest::Approx(0.5));
}
