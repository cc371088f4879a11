#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stylo/commands.hpp"
#include "stylo/errors.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  unsigned threads = 0;
  bool threads_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verbose = false;
};

stylo::RunConfig load_config(const GlobalFlags& flags) {
  stylo::RunConfig config = stylo::RunConfig::load(flags.config_path);
  if (flags.threads_set) config.threads = flags.threads;
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.verbose) config.verbose = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylo: stylometric account-linkage toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* threads_opt =
      app.add_option("--threads", flags.threads, "worker threads (0 = all cores)");
  auto* seed_opt = app.add_option("--seed", flags.seed, "override the experiment seed");
  app.add_flag("--verbose", flags.verbose, "log progress to stderr");

  void (*command)(const stylo::RunConfig&) = nullptr;
  auto subcommand = [&](const char* name, const char* help,
                        void (*fn)(const stylo::RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();  // global flags may follow the subcommand name
    sub->callback([&command, fn] { command = fn; });
  };
  subcommand("gen-synth", "generate a synthetic two-site corpus with ground truth",
             stylo::cmd_gen_synth);
  subcommand("clean", "filter raw posts and report corpus statistics", stylo::cmd_clean);
  subcommand("extract", "compute feature vectors into the feature store", stylo::cmd_extract);
  subcommand("link", "rank known accounts for every unknown account", stylo::cmd_link);
  subcommand("eval", "linkability ratios over shuffled feature orderings", stylo::cmd_eval);
  subcommand("bench", "runtime and memory scaling over candidate-set sizes", stylo::cmd_bench);

  CLI11_PARSE(app, argc, argv);
  flags.threads_set = threads_opt->count() > 0;
  flags.seed_set = seed_opt->count() > 0;

  try {
    stylo::RunConfig config = load_config(flags);
    command(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
