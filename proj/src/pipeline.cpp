#include "netdec/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "netdec/address_intel.hpp"
#include "netdec/features.hpp"
#include "netdec/graph_cache.hpp"
#include "netdec/svg.hpp"

namespace netdec {

namespace {

void validate_token(const std::string& token) {
    if (token.empty()) {
        throw DataError("token id is required");
    }
    for (char c : token) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        if (!ok) {
            throw DataError("token id may only contain letters, digits, '.', '_', '-': " +
                            token);
        }
    }
    if (token == "." || token == "..") {
        throw DataError("token id may not be a directory reference");
    }
}

const char* null_model_name(NullModel model) {
    return model == NullModel::gnm ? "gnm" : "degree-preserving";
}

nlohmann::json analysis_config_json(const RunConfig& config) {
    nlohmann::json j;
    j["token"] = config.token;
    j["null_model"] = null_model_name(config.null_config.null_model);
    j["replicates"] = config.null_config.replicates;
    j["swaps_per_edge"] = config.null_config.swaps_per_edge;
    j["alpha"] = config.null_config.alpha;
    j["master_seed"] = config.null_config.master_seed;
    j["degenerate_significant"] = config.null_config.degenerate_significant;
    j["community_seed"] = config.community_seed;
    j["filter_insignificant"] = config.filter_insignificant;
    return j;
}

std::string dump_pretty(const nlohmann::ordered_json& j) {
    return j.dump(2, ' ', true) + "\n";
}

struct DayAnalysis {
    DayRecord record;
    std::vector<Address> core;  // policy-applied core membership
};

DayAnalysis analyze_day(const DailyGraph& graph, const RunConfig& config) {
    DayAnalysis out;
    FeatureVector f;
    f.day = graph.day();
    f.n_components = count_components(graph);
    f.largest_component_ratio = largest_component_ratio(graph);
    // Per-day seeds keep replicate streams independent of processing order
    // and thread count.
    const std::uint64_t day_key = fnv1a64(format_day(graph.day()));
    const Partition partition =
        detect_communities(graph, splitmix64(config.community_seed ^ day_key));
    f.modularity_score = modularity(graph, partition);
    f.degree_centrality_std = degree_centrality_std(graph);

    NullModelConfig null_config = config.null_config;
    null_config.master_seed = splitmix64(config.null_config.master_seed ^ day_key);
    const CorePeripheryResult cp = detect_core_periphery(graph, null_config);

    out.record.n_core_raw = cp.metrics.n_core;
    out.record.avg_core_degree_raw = cp.metrics.avg_core_degree;
    out.record.z_error = cp.lip.z;
    out.record.p_value = cp.significance.p_value;
    out.record.significant = cp.significant;
    out.record.degenerate = cp.significance.degenerate;

    const bool keep_core = !config.filter_insignificant || cp.significant;
    f.n_core = keep_core ? cp.metrics.n_core : 0;
    f.avg_core_degree = keep_core ? cp.metrics.avg_core_degree : 0.0;
    out.record.features = f;

    out.record.daily_value = graph.total_value();
    out.record.daily_transfers = graph.total_transfers();
    out.record.daily_addresses = graph.node_count();

    if (keep_core) {
        out.core.reserve(cp.lip.core.size());
        for (std::uint32_t v : cp.lip.core) {
            out.core.push_back(graph.address_of(v));
        }
        // Sorted so the serialized membership does not depend on the
        // interning order of the input rows.
        std::sort(out.core.begin(), out.core.end());
    }
    return out;
}

nlohmann::ordered_json analysis_line_json(const DayAnalysis& day) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    const DayRecord& rec = day.record;
    const FeatureVector& f = rec.features;
    j["day"] = format_day(f.day);
    j["n_components"] = f.n_components;
    j["largest_component_ratio"] = f.largest_component_ratio;
    j["modularity"] = f.modularity_score;
    j["degree_centrality_std"] = f.degree_centrality_std;
    j["n_core"] = f.n_core;
    j["avg_core_degree"] = f.avg_core_degree;
    j["n_core_raw"] = rec.n_core_raw;
    j["avg_core_degree_raw"] = rec.avg_core_degree_raw;
    j["z_error"] = rec.z_error;
    if (rec.p_value.has_value()) {
        j["p_value"] = *rec.p_value;
    } else {
        j["p_value"] = nullptr;
    }
    j["significant"] = rec.significant;
    j["degenerate"] = rec.degenerate;
    nlohmann::ordered_json core = nlohmann::ordered_json::array();
    for (const Address& address : day.core) {
        core.push_back(to_string(address));
    }
    j["core"] = std::move(core);
    j["daily_value_wei"] = to_decimal(rec.daily_value);
    j["daily_transfer_count"] = rec.daily_transfers;
    j["daily_address_count"] = rec.daily_addresses;
    return j;
}

struct AnalysisFile {
    std::vector<DayAnalysis> days;  // ascending by day
};

AnalysisFile read_analysis(const std::filesystem::path& dir) {
    const auto path = dir / "analysis.jsonl";
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw DataError("analysis not found under " + dir.string() + "; run analyze first");
    }
    std::istringstream in(read_file(path));
    AnalysisFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError("bad analysis line " + std::to_string(line_no) + " in " +
                            path.string());
        }
        try {
            DayAnalysis day;
            DayRecord& rec = day.record;
            FeatureVector& f = rec.features;
            const auto parsed_day = parse_day(j.at("day").get<std::string>());
            if (!parsed_day) {
                throw DataError("bad day");
            }
            f.day = *parsed_day;
            f.n_components = j.at("n_components").get<std::uint64_t>();
            f.largest_component_ratio = j.at("largest_component_ratio").get<double>();
            f.modularity_score = j.at("modularity").get<double>();
            f.degree_centrality_std = j.at("degree_centrality_std").get<double>();
            f.n_core = j.at("n_core").get<std::uint64_t>();
            f.avg_core_degree = j.at("avg_core_degree").get<double>();
            rec.n_core_raw = j.at("n_core_raw").get<std::uint64_t>();
            rec.avg_core_degree_raw = j.at("avg_core_degree_raw").get<double>();
            rec.z_error = j.at("z_error").get<std::uint64_t>();
            if (!j.at("p_value").is_null()) {
                rec.p_value = j.at("p_value").get<double>();
            }
            rec.significant = j.at("significant").get<bool>();
            rec.degenerate = j.at("degenerate").get<bool>();
            for (const auto& entry : j.at("core")) {
                const auto address = parse_address(entry.get<std::string>());
                if (!address) {
                    throw DataError("bad core address");
                }
                day.core.push_back(*address);
            }
            const auto value = parse_u256(j.at("daily_value_wei").get<std::string>());
            if (!value) {
                throw DataError("bad daily value");
            }
            rec.daily_value = *value;
            rec.daily_transfers = j.at("daily_transfer_count").get<std::uint64_t>();
            rec.daily_addresses = j.at("daily_address_count").get<std::uint64_t>();
            file.days.push_back(std::move(day));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("bad analysis line " + std::to_string(line_no) + " in " +
                            path.string() + ": " + e.what());
        }
    }
    if (file.days.empty()) {
        throw DataError("analysis is empty: " + path.string());
    }
    return file;
}

nlohmann::json read_analysis_meta(const std::filesystem::path& dir) {
    const auto path = dir / "analysis-meta.json";
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw DataError("analysis metadata not found under " + dir.string() +
                        "; run analyze first");
    }
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("format", "") != "netdec-analysis") {
        throw DataError("unrecognized analysis metadata: " + path.string());
    }
    return j;
}

std::vector<AddressProfile> profiles_from_json(const nlohmann::json& array) {
    std::vector<AddressProfile> profiles;
    for (const auto& row : array) {
        AddressProfile p;
        const auto address = parse_address(row.at("address").get<std::string>());
        if (!address) {
            throw DataError("bad profile address");
        }
        p.address = *address;
        p.label = row.at("label").get<std::string>();
        const auto kind = parse_kind(row.at("kind").get<std::string>());
        if (!kind) {
            throw DataError("bad profile kind");
        }
        p.kind = *kind;
        p.core_days = row.at("core_days").get<std::uint64_t>();
        p.outlier = row.at("outlier").get<bool>();
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<AddressProfile> compute_profiles(const AnalysisFile& analysis,
                                             const RunConfig& config, std::ostream& log,
                                             bool persist_store) {
    std::vector<DayCore> day_cores;
    day_cores.reserve(analysis.days.size());
    for (const auto& day : analysis.days) {
        day_cores.push_back({day.record.features.day, day.core});
    }
    const auto tallies = tally_core_days(day_cores);
    if (tallies.empty()) {
        log << "no core members on any analyzed day; profile set is empty\n";
        return {};
    }

    LabelStore store = LabelStore::load_if_exists(config.labels_path);
    log << "label store: " << store.size() << " entries (" << config.labels_path.string()
        << ")\n";
    std::unique_ptr<EthRpcClient> rpc;
    if (!config.rpc_url.empty()) {
        rpc = std::make_unique<EthRpcClient>(config.rpc_url);
        log << "rpc code lookups via " << config.rpc_url << "\n";
    }
    const std::size_t before = store.size();
    std::vector<std::string> warnings;
    auto profiles = build_profiles(tallies, store, rpc.get(), &warnings);
    for (const auto& warning : warnings) {
        log << "warning: " << warning << "\n";
    }
    std::uint64_t unknown = 0;
    for (const auto& p : profiles) {
        if (p.kind == AddressKind::unknown) {
            ++unknown;
        }
    }
    if (unknown > 0) {
        log << "warning: " << unknown
            << " core address(es) unclassified; provide a label entry or --rpc\n";
    }
    if (persist_store && rpc != nullptr && store.size() != before) {
        store.save(config.labels_path);
        log << "label store updated with " << (store.size() - before)
            << " rpc result(s)\n";
    }
    return profiles;
}

void write_profiles_file(const std::filesystem::path& dir, const std::string& token,
                         const std::vector<AddressProfile>& profiles) {
    nlohmann::ordered_json j;
    j["format"] = "netdec-profiles";
    j["version"] = 1;
    j["token"] = token;
    j["profiles"] = nlohmann::ordered_json::parse(profiles_json(profiles));
    write_file(dir / "profiles.json", dump_pretty(j));
}

}  // namespace

std::string config_digest(const RunConfig& config) {
    // nlohmann::json orders keys lexicographically, so dump() is canonical.
    const std::string canonical = analysis_config_json(config).dump();
    return to_hex64(fnv1a64(canonical));
}

std::filesystem::path token_cache_dir(const RunConfig& config) {
    return config.cache_dir / config.token;
}

void cmd_ingest(const RunConfig& config, std::ostream& log) {
    validate_token(config.token);
    if (config.inputs.empty()) {
        throw DataError("no input files given");
    }

    ParseOutcome merged;
    for (const auto& input : config.inputs) {
        std::ifstream in(input, std::ios::binary);
        if (!in) {
            throw IoError("cannot open input: " + input.string());
        }
        ParseOutcome outcome = parse_transfers(in, config.input_format, config.row_errors);
        for (const auto& message : outcome.row_errors) {
            log << "warning: " << input.string() << ": " << message << "\n";
        }
        merged.rows_read += outcome.rows_read;
        merged.rows_skipped += outcome.rows_skipped;
        merged.records.insert(merged.records.end(),
                              std::make_move_iterator(outcome.records.begin()),
                              std::make_move_iterator(outcome.records.end()));
    }
    if (merged.records.empty()) {
        throw DataError("no records in input");
    }

    std::unordered_set<Address> tokens_seen;
    for (const auto& record : merged.records) {
        tokens_seen.insert(record.token);
    }
    if (tokens_seen.size() > 1) {
        log << "warning: input mixes " << tokens_seen.size()
            << " token contracts; all rows are aggregated under '" << config.token << "'\n";
    }

    IngestStats stats;
    stats.rows_read = merged.rows_read;
    stats.rows_skipped = merged.rows_skipped;
    auto retained = filter_records(std::move(merged.records), stats);
    if (retained.empty()) {
        throw DataError("no records remain after filtering mint/burn and self-loop rows");
    }

    std::unordered_set<Address> addresses;
    for (const auto& record : retained) {
        addresses.insert(record.from);
        addresses.insert(record.to);
        stats.total_value += record.value;
    }
    stats.unique_addresses = addresses.size();
    stats.total_transfers = retained.size();

    auto buckets = bucket_by_day(std::move(retained));
    stats.days = buckets.size();
    stats.first_day = buckets.begin()->first;
    stats.last_day = buckets.rbegin()->first;

    const auto dir = token_cache_dir(config);
    std::filesystem::remove_all(dir / "graphs");
    std::uint64_t graphs = 0;
    for (const auto& [day, records] : buckets) {
        const DailyGraph graph = build_daily_graph(day, records);
        write_graph_cache(dir, config.token, graph);
        ++graphs;
    }
    write_ingest_stats(dir, config.token, stats);

    log << "rows read:           " << stats.rows_read << "\n";
    log << "rows skipped:        " << stats.rows_skipped << "\n";
    log << "filtered mint/burn:  " << stats.rows_filtered_null << "\n";
    log << "filtered self-loops: " << stats.rows_filtered_selfloop << "\n";
    log << "retained transfers:  " << stats.total_transfers << "\n";
    log << "days with activity:  " << stats.days << "\n";
    log << "span:                " << format_day(*stats.first_day) << ".."
        << format_day(*stats.last_day) << " (" << stats.duration_days()
        << " days inclusive)\n";
    log << "unique addresses:    " << stats.unique_addresses << "\n";
    log << "total value:         " << to_scientific(stats.total_value) << " wei ("
        << to_decimal(stats.total_value) << ")\n";
    log << "graphs written:      " << graphs << " -> " << (dir / "graphs").string() << "\n";
}

void cmd_analyze(const RunConfig& config, std::ostream& log) {
    validate_token(config.token);
    const auto dir = token_cache_dir(config);
    const auto files = list_graph_cache(dir);
    if (files.empty()) {
        throw DataError("graph cache not found under " + dir.string() + "; run ingest first");
    }
    IngestStats stats;
    const std::string cached_token = read_ingest_stats(dir, stats);
    if (cached_token != config.token) {
        throw DataError("cache at " + dir.string() + " belongs to token '" + cached_token +
                        "'");
    }

    unsigned threads = config.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(files.size()));

    std::vector<DayAnalysis> results(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size() || failed.load()) {
                return;
            }
            try {
                const DailyGraph graph = load_graph_cache(files[i]);
                results[i] = analyze_day(graph, config);
                const DayRecord& rec = results[i].record;
                std::lock_guard<std::mutex> lock(log_mutex);
                log << format_day(rec.features.day) << ": nodes=" << rec.daily_addresses
                    << " components=" << rec.features.n_components
                    << " n_core=" << rec.features.n_core << " z=" << rec.z_error << " p="
                    << (rec.p_value.has_value() ? format_double(*rec.p_value) : "-") << "\n";
            } catch (...) {
                std::lock_guard<std::mutex> lock(log_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::ostringstream lines;
    for (const auto& day : results) {
        lines << analysis_line_json(day).dump(-1, ' ', true) << "\n";
    }
    write_file(dir / "analysis.jsonl", lines.str());

    nlohmann::ordered_json meta;
    meta["format"] = "netdec-analysis";
    meta["version"] = 1;
    meta["token"] = config.token;
    meta["config_digest"] = config_digest(config);
    meta["config"] = analysis_config_json(config);
    meta["days"] = results.size();
    write_file(dir / "analysis-meta.json", dump_pretty(meta));

    std::uint64_t significant_days = 0;
    for (const auto& day : results) {
        if (day.record.significant) {
            ++significant_days;
        }
    }
    log << "analyzed " << results.size() << " day(s), " << significant_days
        << " with significant core-periphery structure -> "
        << (dir / "analysis.jsonl").string() << "\n";
}

void cmd_classify(const RunConfig& config, std::ostream& log) {
    validate_token(config.token);
    const auto dir = token_cache_dir(config);
    const AnalysisFile analysis = read_analysis(dir);
    const auto profiles = compute_profiles(analysis, config, log, /*persist_store=*/true);
    write_profiles_file(dir, config.token, profiles);

    std::uint64_t ca = 0;
    std::uint64_t eoa = 0;
    std::uint64_t unknown = 0;
    std::uint64_t outliers = 0;
    for (const auto& p : profiles) {
        switch (p.kind) {
            case AddressKind::contract:
                ++ca;
                break;
            case AddressKind::eoa:
                ++eoa;
                break;
            case AddressKind::unknown:
                ++unknown;
                break;
        }
        outliers += p.outlier ? 1 : 0;
    }
    log << "profiled " << profiles.size() << " core address(es): " << ca << " CA, " << eoa
        << " EOA, " << unknown << " unknown; " << outliers << " outlier(s) -> "
        << (dir / "profiles.json").string() << "\n";
}

void cmd_report(const RunConfig& config, std::ostream& log) {
    validate_token(config.token);
    const auto dir = token_cache_dir(config);
    const AnalysisFile analysis = read_analysis(dir);
    const nlohmann::json meta = read_analysis_meta(dir);
    if (meta.value("token", "") != config.token) {
        throw DataError("analysis at " + dir.string() + " belongs to token '" +
                        meta.value("token", "") + "'");
    }
    const std::string digest = meta.value("config_digest", "");

    std::vector<DayRecord> rows;
    rows.reserve(analysis.days.size());
    for (const auto& day : analysis.days) {
        rows.push_back(day.record);
    }
    const FeatureTable table = assemble_timeseries(config.token, digest, std::move(rows));
    const CorrelationMatrix matrix =
        correlation_matrix(table, config.correlation, config.extended_correlation);

    std::vector<AddressProfile> profiles;
    const auto profiles_path = dir / "profiles.json";
    std::error_code ec;
    if (std::filesystem::exists(profiles_path, ec)) {
        const auto j = nlohmann::json::parse(read_file(profiles_path), nullptr, false);
        if (j.is_discarded() || j.value("format", "") != "netdec-profiles") {
            throw DataError("unrecognized profiles file: " + profiles_path.string());
        }
        profiles = profiles_from_json(j.at("profiles"));
    } else {
        log << "profiles cache missing; classifying during report (offline unless --rpc)\n";
        profiles = compute_profiles(analysis, config, log, /*persist_store=*/false);
    }

    const auto out_dir = config.output_dir / config.token;
    const auto charts_dir = out_dir / "charts";
    std::filesystem::create_directories(charts_dir);

    write_file(out_dir / "features.csv", feature_table_csv(table));
    write_file(out_dir / "correlation.csv", correlation_csv(matrix));
    write_file(out_dir / "profiles.csv", profiles_csv(profiles));
    if (config.write_json) {
        write_file(out_dir / "features.json", feature_table_json(table));
        write_file(out_dir / "correlation.json", correlation_json(matrix));
        write_file(out_dir / "profiles.json", profiles_json(profiles));
    }

    // One dynamics chart per feature, two auxiliary series, one heatmap.
    std::uint64_t charts = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<ChartPoint> series;
        series.reserve(table.rows.size());
        for (const DayRecord& row : table.rows) {
            const FeatureVector& f = row.features;
            double value = 0.0;
            switch (i) {
                case 0:
                    value = static_cast<double>(f.n_components);
                    break;
                case 1:
                    value = f.largest_component_ratio;
                    break;
                case 2:
                    value = f.modularity_score;
                    break;
                case 3:
                    value = f.degree_centrality_std;
                    break;
                case 4:
                    value = static_cast<double>(f.n_core);
                    break;
                case 5:
                    value = f.avg_core_degree;
                    break;
                default:
                    break;
            }
            series.push_back({f.day, value});
        }
        const std::string name = kFeatureNames[i];
        write_file(charts_dir / (name + ".svg"),
                   render_line_chart(series, config.token + " " + name, name));
        ++charts;
    }
    {
        std::vector<ChartPoint> value_series;
        std::vector<ChartPoint> address_series;
        for (const DayRecord& row : table.rows) {
            value_series.push_back(
                {row.features.day, row.daily_value.convert_to<double>()});
            address_series.push_back(
                {row.features.day, static_cast<double>(row.daily_addresses)});
        }
        write_file(charts_dir / "daily_value.svg",
                   render_line_chart(value_series, config.token + " daily transferred value",
                                     "wei"));
        write_file(charts_dir / "daily_addresses.svg",
                   render_line_chart(address_series, config.token + " daily active addresses",
                                     "addresses"));
        charts += 2;
    }
    const std::string method_name =
        config.correlation == CorrelationMethod::pearson ? "pearson" : "spearman";
    write_file(charts_dir / "correlation.svg",
               render_heatmap(matrix.labels, matrix.values,
                              config.token + " feature correlation (" + method_name + ")"));
    ++charts;

    nlohmann::ordered_json run_meta;
    run_meta["format"] = "netdec-run-metadata";
    run_meta["version"] = 1;
    run_meta["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    run_meta["token"] = config.token;
    run_meta["config_digest"] = digest;
    run_meta["analysis"] = meta.value("config", nlohmann::json::object());
    run_meta["report"] = {{"correlation_method", method_name},
                          {"extended_correlation", config.extended_correlation},
                          {"json_exports", config.write_json}};
    // Direction tags are exposed as data; interpretation is the reader's.
    run_meta["features"] = nlohmann::ordered_json::array();
    const char* directions[6] = {"up", "down", "up", "down", "up", "down"};
    for (std::size_t i = 0; i < 6; ++i) {
        run_meta["features"].push_back(
            {{"name", kFeatureNames[i]}, {"direction", directions[i]}});
    }
    run_meta["days"] = {{"count", table.rows.size()},
                        {"first", format_day(table.rows.front().features.day)},
                        {"last", format_day(table.rows.back().features.day)}};
    write_file(out_dir / "run-metadata.json", dump_pretty(run_meta));

    log << "report written to " << out_dir.string() << ": " << table.rows.size()
        << " day(s), " << charts << " chart(s)\n";
}

int run_command(Command command, const RunConfig& config, std::ostream& log,
                std::ostream& err) {
    try {
        switch (command) {
            case Command::ingest:
                cmd_ingest(config, log);
                break;
            case Command::analyze:
                cmd_analyze(config, log);
                break;
            case Command::classify:
                cmd_classify(config, log);
                break;
            case Command::report:
                cmd_report(config, log);
                break;
        }
        return 0;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "io error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace netdec
