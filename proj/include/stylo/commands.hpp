#pragma once

#include <string>

#include "stylo/config.hpp"

namespace stylo {

// CLI subcommands. Each validates its inputs, runs one pipeline stage and
// writes its outputs under run_dir. All are idempotent for fixed inputs and
// seeds. Errors surface as exceptions; the CLI maps them to exit codes.
void cmd_gen_synth(const RunConfig& config);
void cmd_clean(const RunConfig& config);
void cmd_extract(const RunConfig& config);
void cmd_link(const RunConfig& config);
void cmd_eval(const RunConfig& config);
void cmd_bench(const RunConfig& config);

// Path of the cleaned-posts file cmd_clean writes for a site.
std::string cleaned_posts_path(const RunConfig& config, const std::string& site_id);

// Paths of the files cmd_eval writes.
std::string lr_report_tsv_path(const RunConfig& config);
std::string lr_report_json_path(const RunConfig& config);
std::string feature_study_path(const RunConfig& config);

}  // namespace stylo
