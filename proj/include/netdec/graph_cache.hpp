#pragma once

#include "netdec/daily_graph.hpp"
#include "netdec/transfer.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace netdec {

// On-disk cache so analysis can rerun without re-parsing the raw export.
// Layout under the cache directory:
//   graphs/YYYY-MM-DD.json   one versioned file per day
//   ingest-stats.json        accounting for the whole export
//
// Graph file schema (version 1):
//   {"format":"netdec-graph","version":1,"token":...,"day":"YYYY-MM-DD",
//    "nodes":["0x..",...],
//    "edges":[[a,b,"value",transfers],...]}   a < b, node indices
// Edges are sorted by (a,b) in the file; node order is the interning order.

std::string graph_to_json(const DailyGraph& graph, const std::string& token);
DailyGraph graph_from_json(const std::string& text);

void write_graph_cache(const std::filesystem::path& cache_dir, const std::string& token,
                       const DailyGraph& graph);
DailyGraph load_graph_cache(const std::filesystem::path& file);

// Sorted list of per-day graph files present under the cache.
std::vector<std::filesystem::path> list_graph_cache(const std::filesystem::path& cache_dir);

void write_ingest_stats(const std::filesystem::path& cache_dir, const std::string& token,
                        const IngestStats& stats);
// Returns the token recorded at ingest time.
std::string read_ingest_stats(const std::filesystem::path& cache_dir, IngestStats& stats);

// Whole-file helpers shared across the pipeline; throw IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace netdec
