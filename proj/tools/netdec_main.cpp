#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netdec/pipeline.hpp"

namespace {

constexpr const char* kSchemaFooter =
    "input schema (CSV header / JSONL keys):\n"
    "  token_address,from_address,to_address,value,block_timestamp\n"
    "  value: unsigned integer base units (wei); block_timestamp: \"YYYY-MM-DD "
    "HH:MM:SS[ UTC]\"\n"
    "label store CSV: address,label,kind,source with kind in {CA,EOA,unknown}\n"
    "exit codes: 0 success, 1 usage, 2 data error, 3 io error";

}  // namespace

int main(int argc, char** argv) {
    netdec::RunConfig config;
    CLI::App app{"token transfer network decentralization analyzer"};
    app.footer(kSchemaFooter);
    app.require_subcommand(1);

    const auto add_common = [&config](CLI::App* cmd) {
        cmd->add_option("--token", config.token, "token identifier (cache/output key)")
            ->required();
        cmd->add_option("--cache", config.cache_dir, "cache directory")
            ->capture_default_str();
    };

    auto* ingest =
        app.add_subcommand("ingest", "parse a transfer export into per-day graphs");
    add_common(ingest);
    ingest->add_option("inputs", config.inputs, "transfer export file(s)")->required();
    std::string format = "csv";
    ingest->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    std::string on_bad_row = "abort";
    ingest->add_option("--on-bad-row", on_bad_row, "malformed row policy")
        ->check(CLI::IsMember({"abort", "skip"}))
        ->capture_default_str();

    auto* analyze = app.add_subcommand(
        "analyze", "compute per-day features and core-periphery significance");
    add_common(analyze);
    analyze
        ->add_option("--replicates", config.null_config.replicates,
                     "null-model replicates")
        ->capture_default_str();
    analyze
        ->add_option("--swaps-per-edge", config.null_config.swaps_per_edge,
                     "swap attempts per edge (degree-preserving null)")
        ->capture_default_str();
    analyze->add_option("--alpha", config.null_config.alpha, "significance level")
        ->capture_default_str();
    analyze
        ->add_option("--seed", config.null_config.master_seed,
                     "master seed for null replicates")
        ->capture_default_str();
    std::string null_model = "gnm";
    analyze
        ->add_option("--null-model", null_model,
                     "null model: gnm (uniform with same n, m) or degree-preserving "
                     "(double-edge swaps)")
        ->check(CLI::IsMember({"gnm", "degree-preserving"}))
        ->capture_default_str();
    analyze->add_flag("--degenerate-significant",
                      config.null_config.degenerate_significant,
                      "count days whose null test is impossible as significant");
    analyze
        ->add_option("--community-seed", config.community_seed,
                     "seed for community detection")
        ->capture_default_str();
    bool keep_insignificant = false;
    analyze->add_flag("--keep-insignificant", keep_insignificant,
                      "keep detected core metrics even when not significant");
    analyze->add_option("--threads", config.threads, "worker threads (0 = all cores)")
        ->capture_default_str();

    auto* classify =
        app.add_subcommand("classify", "classify core addresses and flag outliers");
    add_common(classify);
    classify->add_option("--labels", config.labels_path, "label store CSV")
        ->capture_default_str();
    classify
        ->add_option("--rpc", config.rpc_url,
                     "JSON-RPC endpoint for contract-code lookups (http only)")
        ->envname("NETDEC_RPC_URL");

    auto* report =
        app.add_subcommand("report", "write feature tables, charts, and metadata");
    add_common(report);
    report->add_option("--out", config.output_dir, "output directory")
        ->capture_default_str();
    report->add_option("--labels", config.labels_path, "label store CSV")
        ->capture_default_str();
    report
        ->add_option("--rpc", config.rpc_url,
                     "JSON-RPC endpoint for contract-code lookups (http only)")
        ->envname("NETDEC_RPC_URL");
    bool spearman = false;
    report->add_flag("--spearman", spearman, "rank correlation instead of Pearson");
    report->add_flag("--extended-correlation", config.extended_correlation,
                     "add daily value/address series to the matrix");
    report->add_flag("--json", config.write_json, "also write JSON exports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    config.input_format =
        format == "jsonl" ? netdec::InputFormat::jsonl : netdec::InputFormat::csv;
    config.row_errors = on_bad_row == "skip" ? netdec::RowErrorPolicy::skip
                                             : netdec::RowErrorPolicy::abort;
    config.null_config.null_model = null_model == "degree-preserving"
                                        ? netdec::NullModel::degree_preserving
                                        : netdec::NullModel::gnm;
    config.filter_insignificant = !keep_insignificant;
    config.correlation = spearman ? netdec::CorrelationMethod::spearman
                                  : netdec::CorrelationMethod::pearson;

    if (config.null_config.alpha <= 0.0 || config.null_config.alpha >= 1.0) {
        std::cerr << "netdec: --alpha must lie strictly between 0 and 1\n";
        return 1;
    }
    if (config.null_config.replicates < 1) {
        std::cerr << "netdec: --replicates must be at least 1\n";
        return 1;
    }

    netdec::Command command = netdec::Command::ingest;
    if (analyze->parsed()) {
        command = netdec::Command::analyze;
    } else if (classify->parsed()) {
        command = netdec::Command::classify;
    } else if (report->parsed()) {
        command = netdec::Command::report;
    }
    return netdec::run_command(command, config, std::cout, std::cerr);
}
