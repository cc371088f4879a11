// Drives the installed CLI binary end to end on a small synthetic corpus:
// gen-synth -> clean -> extract -> link -> eval, twice for the determinism
// check. Exits nonzero on the first failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << what << std::endl;
  if (!ok) ++failures;
}

int run(const std::string& command) {
  std::cout << "+ " << command << std::endl;
  return std::system(command.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const std::string binary = STYLO_BIN;
  const fs::path source_dir = STYLO_SOURCE_DIR;
  fs::path work = fs::temp_directory_path() / "stylo_cli_pipeline";
  fs::remove_all(work);
  fs::create_directories(work);

  fs::path run_a = work / "run_a";
  fs::path run_b = work / "run_b";
  fs::path config_a = work / "run_a.ini";
  fs::path config_b = work / "run_b.ini";

  auto write_config = [&](const fs::path& path, const fs::path& run_dir) {
    std::ofstream out(path);
    out << "[paths]\n"
        << "run_dir = " << run_dir.string() << "\n"
        << "posts = " << (run_dir / "posts.jsonl").string() << "\n"
        << "ground_truth = " << (run_dir / "truth.tsv").string() << "\n"
        << "store = " << (run_dir / "store").string() << "\n"
        << "function_words = " << (source_dir / "data/function_words.txt").string() << "\n"
        << "pos_b_tags.alpha = " << (run_dir / "external_tags.txt").string() << "\n"
        << "pos_b_tags.beta = " << (run_dir / "external_tags.txt").string() << "\n"
        << "[cleaning]\n"
        << "min_words = 50\n"
        << "[experiment]\n"
        << "site1 = alpha\n"
        << "site2 = beta\n"
        << "author_size = 24\n"
        << "k_values = 1,10\n"
        << "n_orderings = 3\n"
        << "seed = 11\n"
        << "[synth]\n"
        << "matched_authors = 16\n"
        << "extra_known = 12\n"
        << "words_per_side = 300\n"
        << "vocab_size = 600\n"
        << "seed = 21\n"
        << "[hill_climb]\n"
        << "beam = 2\n"
        << "max_size = 2\n"
        << "[bench]\n"
        << "sizes = 12,24\n"
        << "unknowns_per_size = 4\n";
  };
  write_config(config_a, run_a);
  write_config(config_b, run_b);

  auto stylo = [&](const std::string& args, const fs::path& config) {
    return run(binary + " " + args + " --config " + config.string() + " --threads 2");
  };

  check(stylo("gen-synth", config_a) == 0, "gen-synth exits 0");
  check(fs::exists(run_a / "posts.jsonl"), "posts.jsonl written");
  check(fs::exists(run_a / "truth.tsv"), "truth.tsv written");
  check(fs::exists(run_a / "external_tags.txt"), "external_tags.txt written");

  check(stylo("clean", config_a) == 0, "clean exits 0");
  check(fs::exists(run_a / "cleaned_alpha.jsonl"), "cleaned alpha posts written");
  check(fs::exists(run_a / "cleaned_beta.jsonl"), "cleaned beta posts written");
  check(fs::exists(run_a / "corpus_stats.tsv"), "corpus stats written");

  check(stylo("extract", config_a) == 0, "extract exits 0");
  check(fs::exists(run_a / "store" / "alpha"), "store for alpha written");
  check(fs::exists(run_a / "store" / "beta" / "10_words.tsv"), "words category stored");

  // extract twice: the store must be byte-identical
  std::string words_before = slurp(run_a / "store" / "beta" / "10_words.tsv");
  check(stylo("extract", config_a) == 0, "extract re-run exits 0");
  check(slurp(run_a / "store" / "beta" / "10_words.tsv") == words_before,
        "store is byte-identical after re-extract");

  check(stylo("link", config_a) == 0, "link exits 0");
  check(fs::exists(run_a / "baseline_rankings.tsv"), "baseline rankings written");
  check(fs::exists(run_a / "multilevel_links.tsv"), "link results written");
  check(fs::exists(run_a / "multilevel_trace.tsv"), "trace written");

  check(stylo("eval", config_a) == 0, "eval exits 0");
  check(fs::exists(run_a / "lr_report.tsv"), "lr report tsv written");
  check(fs::exists(run_a / "lr_report.json"), "lr report json written");
  check(fs::exists(run_a / "feature_study.tsv"), "feature study written");

  check(stylo("bench", config_a) == 0, "bench exits 0");
  check(fs::exists(run_a / "scaling.tsv"), "scaling table written");
  check(fs::exists(run_a / "manifest_bench.tsv"), "bench manifest written");

  // independent second pipeline: lr reports must match byte for byte
  check(stylo("gen-synth", config_b) == 0, "second gen-synth exits 0");
  check(stylo("clean", config_b) == 0, "second clean exits 0");
  check(stylo("extract", config_b) == 0, "second extract exits 0");
  check(stylo("eval", config_b) == 0, "second eval exits 0");
  check(slurp(run_a / "lr_report.tsv") == slurp(run_b / "lr_report.tsv"),
        "lr_report.tsv identical across pipelines");
  check(slurp(run_a / "lr_report.json") == slurp(run_b / "lr_report.json"),
        "lr_report.json identical across pipelines");
  check(slurp(run_a / "feature_study.tsv") == slurp(run_b / "feature_study.tsv"),
        "feature_study.tsv identical across pipelines");

  // failure modes surface as nonzero exits with a hint
  fs::path bare = work / "bare";
  fs::create_directories(bare);
  fs::path config_bare = work / "bare.ini";
  write_config(config_bare, bare);
  check(stylo("extract", config_bare) != 0, "extract without clean fails");
  check(stylo("eval", config_bare) != 0, "eval without upstream stages fails");

  if (failures == 0) fs::remove_all(work);
  std::cout << (failures == 0 ? "PIPELINE OK" : "PIPELINE FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
