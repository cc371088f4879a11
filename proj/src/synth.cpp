#include "stylo/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "stylo/errors.hpp"
#include "stylo/features.hpp"
#include "stylo/rng.hpp"
#include "stylo/text.hpp"

namespace stylo {

namespace {

// Common function words every synthetic author draws from. Must stay inside
// the shipped 512-word lexicon so generated posts pass the English gate.
const std::vector<std::string>& synth_function_words() {
  static const std::vector<std::string> words = {
      "the", "and", "of", "to", "in", "that", "it", "is", "was", "for",
      "on", "are", "as", "with", "his", "they", "at", "be", "this", "have",
      "from", "or", "had", "by", "but", "not", "what", "all", "were", "we",
      "when", "your", "can", "said", "there", "an", "each", "which",
      "she", "do", "how", "their", "if", "will", "up", "other", "about",
      "out", "many", "then", "them", "these", "so", "some", "her", "would",
      "like", "him", "into", "has", "look", "two", "more", "go",
      "no", "way", "could", "my", "than", "been", "who", "its", "now",
  };
  return words;
}

const std::vector<char>& synth_specials() {
  // '@'-initial tokens would be stripped as mentions, so '@' never leads a
  // generated token.
  static const std::vector<char> chars = {'*', '#', '$', '%', '&', '+', '=', '~',
                                          '^', '|', '\\', '/', '<', '>', '_'};
  return chars;
}

const std::vector<char>& synth_punctuation() {
  static const std::vector<char> marks = {'.', ',', '!', '?', ';', ':', '\'', '"'};
  return marks;
}

// Cumulative-weight sampler; deterministic given the Rng stream.
class Multinomial {
 public:
  explicit Multinomial(const std::vector<double>& weights) {
    cumulative_.reserve(weights.size());
    double total = 0.0;
    for (double w : weights) {
      total += w;
      cumulative_.push_back(total);
    }
  }

  std::size_t draw(Rng& rng) const {
    double r = rng.unit() * cumulative_.back();
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

std::vector<std::string> build_vocabulary(std::size_t size, Rng& rng) {
  static const std::string_view suffixes[] = {"", "", "", "", "ing", "ed", "ly", "s"};
  std::set<std::string> seen;
  std::vector<std::string> vocab;
  vocab.reserve(size);
  while (vocab.size() < size) {
    std::size_t len = 3 + static_cast<std::size_t>(rng.below(6));
    std::string word;
    for (std::size_t i = 0; i < len; ++i) {
      // vowel/consonant alternation keeps words pronounceable and letter
      // n-grams plausible
      static const char vowels[] = "aeiou";
      static const char consonants[] = "bcdfghjklmnpqrstvwz";
      if (i % 2 == 0) {
        word += consonants[rng.below(sizeof(consonants) - 1)];
      } else {
        word += vowels[rng.below(sizeof(vowels) - 1)];
      }
    }
    word += suffixes[rng.below(8)];
    if (seen.insert(word).second) vocab.push_back(std::move(word));
  }
  return vocab;
}

// Per-author habits, all derived from one author seed.
struct AuthorModel {
  Multinomial content;
  Multinomial function_words;
  Multinomial punctuation;
  Multinomial specials;
  double function_ratio;
  double punct_prob;
  double special_prob;
  double digit_prob;
};

std::uint64_t word_hash(const std::string& word) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : word) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// 0 none, 1 -ing, 2 -ed, 3 -ly, 4 -s. Mirrors the shapes the vocabulary is
// built from, so authors develop tag-level habits via word choice.
std::size_t suffix_class(const std::string& word) {
  auto ends = [&](std::string_view s) {
    return word.size() > s.size() &&
           word.compare(word.size() - s.size(), s.size(), s) == 0;
  };
  if (ends("ing")) return 1;
  if (ends("ed")) return 2;
  if (ends("ly")) return 3;
  if (ends("s")) return 4;
  return 0;
}

AuthorModel build_author(const SynthConfig& config, const std::vector<std::string>& vocab,
                         const std::vector<double>& base_content, std::uint64_t author_seed) {
  Rng rng(author_seed);
  double signal = config.signal;

  // Habit layers over the shared vocabulary: boosted preferred words plus
  // letter, suffix-class and hash-class affinities. Every feature channel
  // inherits author signal from one of these layers.
  std::array<double, 26> letter_z;
  for (double& z : letter_z) z = rng.range(-1.0, 1.0);
  std::array<double, 5> suffix_w;
  for (double& w : suffix_w) w = std::exp(signal * 2.2 * rng.range(-1.0, 1.0));
  std::array<double, 13> hash_w;
  for (double& w : hash_w) w = std::exp(signal * 2.2 * rng.range(-1.0, 1.0));

  std::vector<double> content = base_content;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const std::string& word = vocab[i];
    double letter_sum = 0.0;
    for (char c : word) letter_sum += letter_z[static_cast<std::size_t>(c - 'a')];
    content[i] *= std::exp(signal * 1.5 * letter_sum / static_cast<double>(word.size()));
    content[i] *= suffix_w[suffix_class(word)];
    content[i] *= hash_w[word_hash(word) % 13];
  }
  double boost = 1.0 + signal * 14.0;
  std::size_t preferred = std::min(config.preferred_words, content.size());
  for (std::size_t i = 0; i < preferred; ++i) {
    content[rng.below(content.size())] *= boost;
  }

  std::vector<double> func(synth_function_words().size());
  for (std::size_t i = 0; i < func.size(); ++i) {
    double base = 1.0 / static_cast<double>(i + 3);
    func[i] = base * std::exp(signal * 1.8 * rng.range(-1.0, 1.0));
  }

  std::vector<double> punct(synth_punctuation().size());
  for (double& w : punct) w = std::exp(signal * 2.8 * rng.range(-1.0, 1.0));

  std::vector<double> specials(synth_specials().size());
  for (double& w : specials) w = std::exp(signal * 2.8 * rng.range(-1.0, 1.0));

  return AuthorModel{
      Multinomial(content),
      Multinomial(func),
      Multinomial(punct),
      Multinomial(specials),
      0.30 + 0.15 * rng.unit(),
      config.punctuation_prob * (0.6 + 0.8 * rng.unit()),
      config.special_prob * (0.5 + 1.0 * rng.unit()),
      config.digit_prob * (0.5 + 1.0 * rng.unit()),
  };
}

std::string draw_token(const AuthorModel& author, const std::vector<std::string>& vocab,
                       Rng& rng) {
  std::string token;
  double r = rng.unit();
  if (r < author.digit_prob) {
    std::size_t digits = 1 + rng.below(4);
    for (std::size_t i = 0; i < digits; ++i) {
      token += static_cast<char>('0' + rng.below(10));
    }
  } else if (r < author.digit_prob + author.special_prob) {
    token += synth_specials()[author.specials.draw(rng)];
    token += vocab[author.content.draw(rng)];
  } else if (rng.unit() < author.function_ratio) {
    token = synth_function_words()[author.function_words.draw(rng)];
  } else {
    token = vocab[author.content.draw(rng)];
  }
  if (rng.unit() < author.punct_prob) {
    token += synth_punctuation()[author.punctuation.draw(rng)];
  }
  return token;
}

// Deliberately different from the built-in tagger: FNV-1a hash classes plus
// digit/symbol buckets. Stands in for an external tool's output.
std::string alt_tag(const std::string& token) {
  std::string w = normalize_token(token);
  if (w.empty()) return "P0";
  bool digits = std::all_of(w.begin(), w.end(), [](char c) { return is_ascii_digit(c); });
  if (digits) return "D0";
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : w) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "T%02d", static_cast<int>(h % 13));
  return buf;
}

std::string make_id(const char* prefix, std::size_t ordinal) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, ordinal);
  return buf;
}

}  // namespace

SynthCorpus generate_synth(const SynthConfig& config) {
  if (config.matched_authors == 0) throw ValidationError("need at least one matched author");
  if (config.post_words_min < 1 || config.post_words_max < config.post_words_min) {
    throw ValidationError("bad post length bounds");
  }

  Rng vocab_rng(derive_seed(config.seed, 0));
  std::vector<std::string> vocab = build_vocabulary(config.vocab_size, vocab_rng);
  std::vector<double> base_content(vocab.size());
  for (std::size_t i = 0; i < base_content.size(); ++i) {
    base_content[i] = 1.0 / static_cast<double>(i + 5);  // zipf-flavored base
  }

  SynthCorpus corpus;

  auto emit_stream = [&](const std::string& author_id, const std::string& site_id,
                         const AuthorModel& author, std::size_t words, Rng& rng) {
    std::size_t emitted = 0;
    std::size_t post_no = 0;
    while (emitted < words) {
      std::size_t remaining = words - emitted;
      std::size_t span = config.post_words_min +
                         rng.below(config.post_words_max - config.post_words_min + 1);
      std::size_t len = std::min(span, remaining);
      std::vector<std::string> tokens;
      tokens.reserve(len);
      for (std::size_t i = 0; i < len; ++i) {
        tokens.push_back(draw_token(author, vocab, rng));
      }
      Post post;
      post.author_id = author_id;
      post.site_id = site_id;
      post.post_id = site_id + "-" + author_id + "-" + std::to_string(post_no++);
      post.text = join(tokens);
      TaggedPost tagged;
      tagged.post_id = post.post_id;
      tagged.tokens = tokens;
      tagged.tags.reserve(tokens.size());
      for (const std::string& t : tokens) tagged.tags.push_back(alt_tag(t));
      corpus.external_tags.push_back(std::move(tagged));
      corpus.posts.push_back(std::move(post));
      emitted += len;
    }
  };

  for (std::size_t a = 0; a < config.matched_authors; ++a) {
    std::uint64_t author_seed = derive_seed(config.seed, 1000 + a);
    AuthorModel author = build_author(config, vocab, base_content, author_seed);
    Rng stream_rng(derive_seed(author_seed, 1));
    std::string id1 = make_id("u", a);
    std::string id2 = make_id("k", a);
    // One stream split across the two pseudo-sites.
    emit_stream(id1, config.site1, author, config.words_per_side, stream_rng);
    emit_stream(id2, config.site2, author, config.words_per_side, stream_rng);
    corpus.truth.pairs.emplace_back(id1, id2);
  }
  for (std::size_t a = 0; a < config.extra_known; ++a) {
    std::uint64_t author_seed = derive_seed(config.seed, 5000000 + a);
    AuthorModel author = build_author(config, vocab, base_content, author_seed);
    Rng stream_rng(derive_seed(author_seed, 1));
    emit_stream(make_id("x", a), config.site2, author, config.words_per_side, stream_rng);
  }
  return corpus;
}

void write_synth(const SynthCorpus& corpus, const std::string& dir, bool emit_tags) {
  std::filesystem::create_directories(dir);
  write_posts_file((std::filesystem::path(dir) / "posts.jsonl").string(), corpus.posts);
  {
    std::ofstream out(std::filesystem::path(dir) / "truth.tsv");
    if (!out) throw InputError("cannot write ground truth under " + dir);
    write_ground_truth(out, corpus.truth);
  }
  if (emit_tags) {
    std::ofstream out(std::filesystem::path(dir) / "external_tags.txt");
    if (!out) throw InputError("cannot write external tags under " + dir);
    write_external_tags(out, corpus.external_tags);
  }
}

}  // namespace stylo
