#include "stylo/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "stylo/bench.hpp"
#include "stylo/cleaning.hpp"
#include "stylo/errors.hpp"
#include "stylo/evaluate.hpp"
#include "stylo/feature_store.hpp"
#include "stylo/multilevel.hpp"
#include "stylo/parallel.hpp"
#include "stylo/ranker.hpp"

namespace stylo {

namespace fs = std::filesystem;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void require_file(const std::string& path, const std::string& what, const std::string& hint) {
  if (path.empty()) throw ValidationError("config is missing a path for " + what);
  if (!fs::exists(path)) {
    throw ValidationError("missing " + what + " at '" + path + "'" +
                          (hint.empty() ? "" : " (" + hint + ")"));
  }
}

unsigned effective_threads(const RunConfig& config) {
  return config.threads == 0 ? default_threads() : config.threads;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write output file: " + path);
  return out;
}

void write_manifest(const RunConfig& config, const std::string& command) {
  fs::create_directories(config.run_dir);
  std::string path = (fs::path(config.run_dir) / ("manifest_" + command + ".tsv")).string();
  std::ofstream out = open_output(path);
  out << "command\t" << command << '\n';
  out << "config\t" << config.config_path << '\n';
  out << "config_hash\t" << config.config_hash << '\n';
  out << "seed\t" << config.seed << '\n';
  out << "synth_seed\t" << config.synth.seed << '\n';
}

void log(const RunConfig& config, const std::string& message) {
  if (config.verbose) std::cerr << message << '\n';
}

std::vector<AuthorProfile> load_cleaned_profiles(const RunConfig& config,
                                                 const std::string& site_id) {
  std::string path = cleaned_posts_path(config, site_id);
  require_file(path, "cleaned posts for site '" + site_id + "'", "run the clean stage first");
  IngestResult in = ingest_posts_file(path);
  if (in.malformed > 0) {
    throw IntegrityError(path + ": " + std::to_string(in.malformed) +
                         " malformed cleaned records");
  }
  return build_profiles(in.posts, config.cleaning.min_words);
}

std::size_t count_matched(const std::vector<AuthorProfile>& site1,
                          const std::vector<AuthorProfile>& site2, const MatchSet& truth) {
  std::set<std::string> ids1, ids2;
  for (const AuthorProfile& p : site1) ids1.insert(p.author_id);
  for (const AuthorProfile& p : site2) ids2.insert(p.author_id);
  std::size_t matched = 0;
  for (const auto& [a, b] : truth.pairs) {
    if (ids1.count(a) > 0 && ids2.count(b) > 0) ++matched;
  }
  return matched;
}

struct LoadedExperiment {
  ExperimentSets sets;
  std::map<std::string, ProfileFeatures> unknown_features;
  std::map<std::string, ProfileFeatures> known_features;
};

LoadedExperiment load_experiment(const RunConfig& config) {
  require(!config.site1.empty() && !config.site2.empty(),
          "config must set experiment.site1 and experiment.site2");
  require_file(config.ground_truth_path, "ground truth", "");
  require(!config.store_dir.empty(), "config must set paths.store");
  require_file(config.store_dir, "feature store", "run the extract stage first");

  GroundTruthOptions gt;
  gt.delimiter = config.ground_truth_delimiter;
  gt.has_header = config.ground_truth_header;
  MatchSet truth = load_ground_truth(config.ground_truth_path, gt);

  std::vector<AuthorProfile> profiles1 = load_cleaned_profiles(config, config.site1);
  std::vector<AuthorProfile> profiles2 = load_cleaned_profiles(config, config.site2);

  std::size_t author_size = config.author_size;
  if (author_size == 0) author_size = count_matched(profiles1, profiles2, truth);
  require(author_size > 0, "experiment has no matched authors");

  LoadedExperiment out;
  out.sets = select_experiment_sets(profiles1, profiles2, truth, author_size, config.seed);

  FeatureStore store(config.store_dir);
  std::set<FeatureCategory> wanted(config.categories.begin(), config.categories.end());
  out.unknown_features = store.load_site(config.site1, wanted);
  out.known_features = store.load_site(config.site2, wanted);
  return out;
}

}  // namespace

std::string cleaned_posts_path(const RunConfig& config, const std::string& site_id) {
  return (fs::path(config.run_dir) / ("cleaned_" + site_id + ".jsonl")).string();
}

std::string lr_report_tsv_path(const RunConfig& config) {
  return (fs::path(config.run_dir) / "lr_report.tsv").string();
}

std::string lr_report_json_path(const RunConfig& config) {
  return (fs::path(config.run_dir) / "lr_report.json").string();
}

std::string feature_study_path(const RunConfig& config) {
  return (fs::path(config.run_dir) / "feature_study.tsv").string();
}

void cmd_gen_synth(const RunConfig& config) {
  require(!config.run_dir.empty(), "config must set paths.run_dir");
  SynthCorpus corpus = generate_synth(config.synth);
  write_synth(corpus, config.run_dir, config.synth_emit_tags);
  write_manifest(config, "gen-synth");
  log(config, "gen-synth: " + std::to_string(corpus.posts.size()) + " posts, " +
                  std::to_string(corpus.truth.pairs.size()) + " matched authors");
}

void cmd_clean(const RunConfig& config) {
  require(!config.run_dir.empty(), "config must set paths.run_dir");
  require_file(config.posts_path, "input posts", "");
  require_file(config.function_words_path, "function-word lexicon", "");
  CleaningConfig cleaning = config.make_cleaning_config();

  IngestResult in = ingest_posts_file(config.posts_path);
  if (in.malformed > 0) {
    std::cerr << "warning: skipped " << in.malformed << " malformed post records\n";
  }

  std::vector<Post> cleaned(in.posts.size());
  std::vector<unsigned char> kept(in.posts.size(), 0);
  parallel_for(in.posts.size(), effective_threads(config), [&](std::size_t i) {
    if (auto p = clean_post(in.posts[i], cleaning)) {
      cleaned[i] = std::move(*p);
      kept[i] = 1;
    }
  });

  std::map<std::string, std::vector<Post>> by_site;
  std::vector<Post> surviving;
  for (std::size_t i = 0; i < in.posts.size(); ++i) {
    if (kept[i]) {
      by_site[cleaned[i].site_id].push_back(cleaned[i]);
      surviving.push_back(std::move(cleaned[i]));
    }
  }

  fs::create_directories(config.run_dir);
  for (const auto& [site, posts] : by_site) {
    write_posts_file(cleaned_posts_path(config, site), posts);
  }

  std::vector<AuthorProfile> profiles = build_profiles(surviving, cleaning.min_words);
  CorpusStats stats = corpus_stats(in.posts, profiles);
  std::ofstream out = open_output((fs::path(config.run_dir) / "corpus_stats.tsv").string());
  write_corpus_stats(out, stats);
  write_manifest(config, "clean");
  log(config, "clean: " + std::to_string(surviving.size()) + " of " +
                  std::to_string(in.posts.size()) + " posts kept, " +
                  std::to_string(profiles.size()) + " profiles");
}

void cmd_extract(const RunConfig& config) {
  require(!config.store_dir.empty(), "config must set paths.store");
  require_file(config.function_words_path, "function-word lexicon", "");
  ExtractionConfig extraction = config.make_extraction_config();

  FeatureStore store(config.store_dir);
  for (const std::string& site : {config.site1, config.site2}) {
    require(!site.empty(), "config must set experiment.site1 and experiment.site2");
    std::vector<AuthorProfile> profiles = load_cleaned_profiles(config, site);

    ExternalTagIndex tag_index;
    const ExternalTagIndex* tags = nullptr;
    auto it = config.pos_b_tags.find(site);
    if (it != config.pos_b_tags.end()) {
      require_file(it->second, "external tags for site '" + site + "'", "");
      tag_index = build_tag_index(ingest_external_tags(it->second));
      tags = &tag_index;
    }

    std::vector<ProfileFeatures> features(profiles.size());
    parallel_for(profiles.size(), effective_threads(config), [&](std::size_t i) {
      features[i] = extract_all(profiles[i], extraction, tags);
    });
    store.write_site(site, features);
    log(config, "extract: " + site + ": " + std::to_string(features.size()) + " profiles");
  }
  write_manifest(config, "extract");
}

void cmd_link(const RunConfig& config) {
  require(!config.run_dir.empty(), "config must set paths.run_dir");
  LoadedExperiment experiment = load_experiment(config);
  unsigned threads = effective_threads(config);

  // Baseline: one full ranking per unknown over all enabled categories.
  std::set<FeatureCategory> combined(config.categories.begin(), config.categories.end());
  std::vector<ProfileFeatures> placeholders;
  std::vector<const ProfileFeatures*> knowns;
  placeholders.reserve(experiment.sets.knowns.size());
  knowns.reserve(experiment.sets.knowns.size());
  for (const AuthorProfile& profile : experiment.sets.knowns) {
    auto it = experiment.known_features.find(profile.author_id);
    if (it != experiment.known_features.end()) {
      knowns.push_back(&it->second);
    } else {
      ProfileFeatures empty;
      empty.author_id = profile.author_id;
      empty.site_id = profile.site_id;
      placeholders.push_back(std::move(empty));
      knowns.push_back(&placeholders.back());
    }
  }
  std::vector<RankedList> rankings(experiment.sets.unknowns.size());
  parallel_for(experiment.sets.unknowns.size(), threads, [&](std::size_t i) {
    const std::string& id = experiment.sets.unknowns[i].author_id;
    auto it = experiment.unknown_features.find(id);
    if (it == experiment.unknown_features.end()) {
      throw NotFoundError("no stored features for unknown account '" + id + "'");
    }
    rankings[i] = rank_known(it->second, knowns, combined);
  });
  {
    std::ofstream out = open_output((fs::path(config.run_dir) / "baseline_rankings.tsv").string());
    write_ranked_lists(out, rankings);
  }

  // Multilevel pass with the configured seed's feature order.
  MultiLevelConfig ml;
  ml.feature_order = shuffled_feature_order(config.categories, config.seed);
  ml.top_t_floor = config.top_t_floor;
  std::vector<LinkResult> results = multilevel_run(
      experiment.sets, experiment.unknown_features, experiment.known_features, ml, threads);
  {
    std::ofstream out = open_output((fs::path(config.run_dir) / "multilevel_links.tsv").string());
    write_link_results(out, results);
  }
  {
    std::ofstream out = open_output((fs::path(config.run_dir) / "multilevel_trace.tsv").string());
    write_trace(out, results);
  }
  write_manifest(config, "link");
  log(config, "link: " + std::to_string(results.size()) + " unknowns linked");
}

void cmd_eval(const RunConfig& config) {
  require(!config.run_dir.empty(), "config must set paths.run_dir");
  LoadedExperiment experiment = load_experiment(config);

  EvalOptions eval;
  eval.k_values = config.k_values;
  eval.n_orderings = config.n_orderings;
  eval.base_seed = config.seed;
  eval.top_t_floor = config.top_t_floor;
  eval.categories = config.categories;
  eval.threads = effective_threads(config);
  LinkabilityReport report = multi_ordering_run(experiment.sets, experiment.unknown_features,
                                                experiment.known_features, eval);
  {
    std::ofstream out = open_output(lr_report_tsv_path(config));
    write_lr_report_tsv(out, report);
  }
  {
    std::ofstream out = open_output(lr_report_json_path(config));
    write_lr_report_json(out, report);
  }

  HillClimbOptions hc;
  hc.beam = config.beam;
  hc.max_size = config.max_combo;
  hc.categories = config.categories;
  hc.threads = effective_threads(config);
  FeatureStudy study = hill_climb_features(experiment.sets, experiment.unknown_features,
                                           experiment.known_features, hc);
  {
    std::ofstream out = open_output(feature_study_path(config));
    write_feature_study(out, study);
  }
  write_manifest(config, "eval");
  log(config, "eval: mean top-1 " + std::to_string(report.per_k.empty() ? 0.0 : report.per_k[0].mean));
}

void cmd_bench(const RunConfig& config) {
  require(!config.run_dir.empty(), "config must set paths.run_dir");
  require(!config.bench_sizes.empty(), "config must set bench.sizes");

  RunConfig sized = config;
  sized.author_size = *std::max_element(config.bench_sizes.begin(), config.bench_sizes.end());
  LoadedExperiment experiment = load_experiment(sized);

  ScalingOptions options;
  options.sizes = config.bench_sizes;
  options.unknowns_per_size = config.bench_unknowns;
  options.categories = config.categories;
  options.top_t_floor = config.top_t_floor;
  options.seed = config.seed;
  ScalingReport report = scaling_bench(experiment.sets, experiment.unknown_features,
                                       experiment.known_features, options);
  std::ofstream out = open_output((fs::path(config.run_dir) / "scaling.tsv").string());
  write_scaling_report(out, report);
  write_manifest(config, "bench");
}

}  // namespace stylo
