#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "netdec/common.hpp"
#include "netdec/daily_graph.hpp"

namespace netdec {

// Bare undirected simple graph used for null-model replicates. Edges are
// unordered pairs with a < b; no isolated-node or dedup guarantees beyond
// what the producing function documents.
struct Topology {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

Topology topology_of(const DailyGraph& graph);

// Number of idealized-pattern violations for a given core set: missing
// core-core edges plus present periphery-periphery edges. Counted directly
// from the definition so it can cross-check the incremental optimizer.
std::uint64_t borgatti_everett_error(const Topology& topology,
                                     const std::vector<bool>& in_core);

struct LipResult {
    std::vector<std::uint32_t> core;  // node indices, ascending
    std::uint64_t z = 0;
};

// Degree-prefix minimization of the Borgatti-Everett error. Nodes are
// ordered by descending degree (ties: ascending address when available,
// otherwise ascending index); the best prefix under the incremental
// recurrence Z(k) = Z(k-1) + (k-1) - deg(v_k) is returned. The empty
// prefix (Z(0) = |E|) is a valid outcome.
LipResult lip_partition(const Topology& topology);
LipResult lip_partition(const DailyGraph& graph);

// Degree-preserving rewiring: repeated random double-edge swaps that
// reject self-loops and parallel edges. `changed` reports whether any
// swap succeeded.
struct RewireOutcome {
    Topology topology;
    std::uint64_t swaps_applied = 0;
    bool changed = false;
};

RewireOutcome rewire_configuration_model(const Topology& topology, std::uint64_t seed,
                                         std::uint64_t swap_attempts);

// Uniform simple graph with n nodes and m edges. Throws DataError when m
// exceeds C(n,2).
Topology sample_gnm(std::uint32_t n, std::uint64_t m, std::uint64_t seed);

enum class NullModel {
    gnm,
    degree_preserving,
};

struct NullModelConfig {
    NullModel null_model = NullModel::gnm;
    std::uint64_t replicates = 100;
    std::uint64_t swaps_per_edge = 10;  // degree_preserving only
    double alpha = 0.05;
    std::uint64_t master_seed = 0;
    // Verdict when the test is skipped because no replicate could be
    // randomized (degree_preserving on swap-frozen graphs).
    bool degenerate_significant = false;
};

// One-sided plus-one estimate of P(Z_null <= z_observed). `p_value` is
// absent only in the degenerate degree-preserving case where no replicate
// achieved a single successful swap.
struct SignificanceOutcome {
    std::optional<double> p_value;
    std::uint64_t replicates = 0;
    std::uint64_t hits = 0;
    bool degenerate = false;
};

SignificanceOutcome significance_test(const Topology& topology, std::uint64_t observed_z,
                                      const NullModelConfig& config);

struct CoreMetrics {
    std::uint64_t n_core = 0;
    double avg_core_degree = 0.0;  // 0.0 when the core is empty
};

CoreMetrics core_metrics(const DailyGraph& graph, const std::vector<std::uint32_t>& core);

struct CorePeripheryResult {
    LipResult lip;
    CoreMetrics metrics;
    SignificanceOutcome significance;
    bool significant = false;  // p_value < alpha, or the configured degenerate verdict
};

CorePeripheryResult detect_core_periphery(const DailyGraph& graph,
                                          const NullModelConfig& config);

}  // namespace netdec
