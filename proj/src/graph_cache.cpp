#include "netdec/graph_cache.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace netdec {

namespace {

constexpr int kGraphVersion = 1;
constexpr int kStatsVersion = 1;

nlohmann::ordered_json parse_versioned(const std::string& text, const char* expected_format) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw DataError(std::string(expected_format) + ": not a JSON object");
    }
    if (doc.value("format", "") != expected_format) {
        throw DataError(std::string("unexpected format '") + doc.value("format", "") +
                        "', want '" + expected_format + "'");
    }
    const int version = doc.value("version", 0);
    if (version != kGraphVersion) {
        throw DataError(std::string(expected_format) + ": unsupported version " +
                        std::to_string(version));
    }
    return doc;
}

}  // namespace

std::string graph_to_json(const DailyGraph& graph, const std::string& token) {
    nlohmann::ordered_json doc;
    doc["format"] = "netdec-graph";
    doc["version"] = kGraphVersion;
    doc["token"] = token;
    doc["day"] = format_day(graph.day());
    auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& a : graph.nodes()) {
        nodes.push_back(to_string(a));
    }
    std::vector<GraphEdge> sorted = graph.edges();
    std::sort(sorted.begin(), sorted.end(), [](const GraphEdge& x, const GraphEdge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    auto& edges = doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : sorted) {
        edges.push_back({e.a, e.b, to_decimal(e.value), e.transfers});
    }
    return doc.dump() + "\n";
}

DailyGraph graph_from_json(const std::string& text) {
    nlohmann::ordered_json doc = parse_versioned(text, "netdec-graph");
    auto day = parse_day(doc.value("day", ""));
    if (!day) {
        throw DataError("netdec-graph: bad day field");
    }
    std::vector<Address> nodes;
    for (const auto& item : doc.at("nodes")) {
        auto a = parse_address(item.get<std::string>());
        if (!a) {
            throw DataError("netdec-graph: bad node address");
        }
        nodes.push_back(*a);
    }
    std::vector<GraphEdge> edges;
    for (const auto& item : doc.at("edges")) {
        if (!item.is_array() || item.size() != 4) {
            throw DataError("netdec-graph: bad edge entry");
        }
        auto value = parse_u256(item.at(2).get<std::string>());
        if (!value) {
            throw DataError("netdec-graph: bad edge value");
        }
        edges.push_back(GraphEdge{item.at(0).get<std::uint32_t>(),
                                  item.at(1).get<std::uint32_t>(), *value,
                                  item.at(3).get<std::uint64_t>()});
    }
    return DailyGraph(*day, std::move(nodes), std::move(edges));
}

void write_graph_cache(const std::filesystem::path& cache_dir, const std::string& token,
                       const DailyGraph& graph) {
    const auto dir = cache_dir / "graphs";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    write_file(dir / (format_day(graph.day()) + ".json"), graph_to_json(graph, token));
}

DailyGraph load_graph_cache(const std::filesystem::path& file) {
    return graph_from_json(read_file(file));
}

std::vector<std::filesystem::path> list_graph_cache(const std::filesystem::path& cache_dir) {
    const auto dir = cache_dir / "graphs";
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

void write_ingest_stats(const std::filesystem::path& cache_dir, const std::string& token,
                        const IngestStats& stats) {
    nlohmann::ordered_json doc;
    doc["format"] = "netdec-ingest-stats";
    doc["version"] = kStatsVersion;
    doc["token"] = token;
    doc["rows_read"] = stats.rows_read;
    doc["rows_skipped"] = stats.rows_skipped;
    doc["rows_filtered_null"] = stats.rows_filtered_null;
    doc["rows_filtered_selfloop"] = stats.rows_filtered_selfloop;
    doc["days"] = stats.days;
    doc["first_day"] = stats.first_day ? format_day(*stats.first_day) : "";
    doc["last_day"] = stats.last_day ? format_day(*stats.last_day) : "";
    doc["duration_days"] = stats.duration_days();
    doc["unique_addresses"] = stats.unique_addresses;
    doc["total_transfers"] = stats.total_transfers;
    doc["total_value"] = to_decimal(stats.total_value);
    write_file(cache_dir / "ingest-stats.json", doc.dump(2) + "\n");
}

std::string read_ingest_stats(const std::filesystem::path& cache_dir, IngestStats& stats) {
    nlohmann::ordered_json doc =
        parse_versioned(read_file(cache_dir / "ingest-stats.json"), "netdec-ingest-stats");
    stats = IngestStats{};
    stats.rows_read = doc.value("rows_read", 0ULL);
    stats.rows_skipped = doc.value("rows_skipped", 0ULL);
    stats.rows_filtered_null = doc.value("rows_filtered_null", 0ULL);
    stats.rows_filtered_selfloop = doc.value("rows_filtered_selfloop", 0ULL);
    stats.days = doc.value("days", 0ULL);
    stats.first_day = parse_day(doc.value("first_day", ""));
    stats.last_day = parse_day(doc.value("last_day", ""));
    stats.unique_addresses = doc.value("unique_addresses", 0ULL);
    stats.total_transfers = doc.value("total_transfers", 0ULL);
    auto total = parse_u256(doc.value("total_value", ""));
    if (!total) {
        throw DataError("netdec-ingest-stats: bad total_value");
    }
    stats.total_value = *total;
    return doc.value("token", "");
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return bytes;
}

}  // namespace netdec
