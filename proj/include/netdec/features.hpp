#pragma once

#include "netdec/daily_graph.hpp"

#include <cstdint>
#include <vector>

namespace netdec {

// Community assignment over node indices. Ids are dense from 0.
struct Partition {
    std::vector<std::uint32_t> community_of;
    std::uint32_t community_count = 0;
};

// All features below are computed on the unweighted topology; edge values
// never enter them.

std::uint64_t count_components(const DailyGraph& graph);

// |largest component| / |nodes|, in (0, 1].
double largest_component_ratio(const DailyGraph& graph);

// Greedy modularity maximization (Louvain, resolution 1.0). Node visiting
// order is a seeded shuffle of the address-sorted node order, so the
// result is deterministic for a seed and invariant under input reordering.
Partition detect_communities(const DailyGraph& graph, std::uint64_t seed);

// Q = sum_c [ e_c/m - (d_c/2m)^2 ].
double modularity(const DailyGraph& graph, const Partition& partition);

// Population standard deviation of degree/(n-1) over all nodes.
double degree_centrality_std(const DailyGraph& graph);

// The six per-day features of the analysis.
struct FeatureVector {
    CivilDay day{};
    std::uint64_t n_components = 0;
    double largest_component_ratio = 0.0;
    double modularity_score = 0.0;
    double degree_centrality_std = 0.0;
    std::uint64_t n_core = 0;
    double avg_core_degree = 0.0;
};

// Feature names in canonical column order.
inline constexpr const char* kFeatureNames[6] = {
    "n_components",       "largest_component_ratio", "modularity",
    "degree_centrality_std", "n_core",               "avg_core_degree"};

}  // namespace netdec
