#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netdec/coreperiphery.hpp"
#include "netdec/report.hpp"
#include "netdec/transfer.hpp"

namespace netdec {

inline constexpr const char* kToolName = "netdec";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything the subcommands need. Defaults here are the documented CLI
// defaults; paths are resolved relative to the working directory.
struct RunConfig {
    RunConfig() { null_config.master_seed = 42; }

    std::string token;
    std::filesystem::path cache_dir = "cache";

    // ingest
    std::vector<std::filesystem::path> inputs;
    InputFormat input_format = InputFormat::csv;
    RowErrorPolicy row_errors = RowErrorPolicy::abort;

    // analyze
    NullModelConfig null_config;
    std::uint64_t community_seed = 42;
    bool filter_insignificant = true;  // zero out core metrics on insignificant days
    unsigned threads = 1;              // 0: one per hardware thread

    // classify / report
    std::string rpc_url;  // empty: offline
    std::filesystem::path labels_path = "data/labels.csv";
    CorrelationMethod correlation = CorrelationMethod::pearson;
    bool extended_correlation = false;
    bool write_json = false;
    std::filesystem::path output_dir = "out";
};

// Digest over the analysis-affecting parameters (token, null-model
// settings, seeds, significance policy). Stable across runs and machines.
std::string config_digest(const RunConfig& config);

// Cache location for one token's intermediate artifacts.
std::filesystem::path token_cache_dir(const RunConfig& config);

void cmd_ingest(const RunConfig& config, std::ostream& log);
void cmd_analyze(const RunConfig& config, std::ostream& log);
void cmd_classify(const RunConfig& config, std::ostream& log);
void cmd_report(const RunConfig& config, std::ostream& log);

enum class Command { ingest, analyze, classify, report };

// Runs one subcommand, mapping errors to the documented exit codes:
// 0 success, 2 data error, 3 IO error (usage errors are the CLI's job).
int run_command(Command command, const RunConfig& config, std::ostream& log,
                std::ostream& err);

}  // namespace netdec
