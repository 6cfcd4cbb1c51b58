#include "netdec/coreperiphery.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

namespace netdec {

namespace {

std::uint64_t pack_edge(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::pair<std::uint32_t, std::uint32_t> ordered(std::uint32_t x, std::uint32_t y) {
    return x < y ? std::pair{x, y} : std::pair{y, x};
}

std::vector<std::uint64_t> topology_degrees(const Topology& topology) {
    std::vector<std::uint64_t> degree(topology.n, 0);
    for (const auto& [a, b] : topology.edges) {
        if (a >= topology.n || b >= topology.n) {
            throw DataError("edge endpoint out of range");
        }
        if (a == b) {
            throw DataError("self-loop in topology");
        }
        ++degree[a];
        ++degree[b];
    }
    return degree;
}

// Shared tail of the prefix minimization: `order` lists nodes from most to
// least central; the recurrence walks prefixes of that order.
LipResult lip_from_order(std::uint64_t edge_count, const std::vector<std::uint64_t>& degree,
                         const std::vector<std::uint32_t>& order) {
    std::int64_t z = static_cast<std::int64_t>(edge_count);
    std::int64_t best_z = z;
    std::size_t best_k = 0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        z += static_cast<std::int64_t>(k - 1) -
             static_cast<std::int64_t>(degree[order[k - 1]]);
        if (z < best_z) {
            best_z = z;
            best_k = k;
        }
    }
    LipResult result;
    result.core.assign(order.begin(), order.begin() + best_k);
    std::sort(result.core.begin(), result.core.end());
    result.z = static_cast<std::uint64_t>(best_z);
    return result;
}

}  // namespace

Topology topology_of(const DailyGraph& graph) {
    Topology t;
    t.n = graph.node_count();
    t.edges.reserve(graph.edges().size());
    for (const auto& e : graph.edges()) {
        t.edges.push_back({e.a, e.b});
    }
    return t;
}

std::uint64_t borgatti_everett_error(const Topology& topology,
                                     const std::vector<bool>& in_core) {
    if (in_core.size() != topology.n) {
        throw DataError("core indicator does not cover all nodes");
    }
    std::uint64_t core_size = 0;
    for (bool c : in_core) {
        core_size += c ? 1 : 0;
    }
    std::uint64_t core_edges = 0;
    std::uint64_t periphery_edges = 0;
    for (const auto& [a, b] : topology.edges) {
        if (a >= topology.n || b >= topology.n) {
            throw DataError("edge endpoint out of range");
        }
        if (in_core[a] && in_core[b]) {
            ++core_edges;
        } else if (!in_core[a] && !in_core[b]) {
            ++periphery_edges;
        }
    }
    return core_size * (core_size - 1) / 2 - core_edges + periphery_edges;
}

LipResult lip_partition(const Topology& topology) {
    const auto degree = topology_degrees(topology);
    std::vector<std::uint32_t> order(topology.n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (degree[a] != degree[b]) {
            return degree[a] > degree[b];
        }
        return a < b;
    });
    return lip_from_order(topology.edges.size(), degree, order);
}

LipResult lip_partition(const DailyGraph& graph) {
    const std::uint32_t n = graph.node_count();
    std::vector<std::uint64_t> degree(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        degree[v] = graph.degree(v);
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (degree[a] != degree[b]) {
            return degree[a] > degree[b];
        }
        return graph.address_of(a) < graph.address_of(b);
    });
    return lip_from_order(graph.edge_count(), degree, order);
}

RewireOutcome rewire_configuration_model(const Topology& topology, std::uint64_t seed,
                                         std::uint64_t swap_attempts) {
    topology_degrees(topology);  // validates endpoints
    RewireOutcome outcome;
    outcome.topology = topology;
    auto& edges = outcome.topology.edges;
    const std::uint64_t m = edges.size();
    if (m < 2) {
        return outcome;
    }

    std::unordered_set<std::uint64_t> present;
    present.reserve(m * 2);
    for (const auto& [a, b] : edges) {
        const auto [lo, hi] = ordered(a, b);
        if (!present.insert(pack_edge(lo, hi)).second) {
            throw DataError("parallel edge in topology");
        }
    }

    std::mt19937_64 rng(splitmix64(seed));
    for (std::uint64_t attempt = 0; attempt < swap_attempts; ++attempt) {
        const std::uint64_t i = bounded_rand(rng, m);
        const std::uint64_t j = bounded_rand(rng, m);
        const bool cross = bounded_rand(rng, 2) == 1;
        if (i == j) {
            continue;
        }
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (cross) {
            std::swap(c, d);
        }
        // Proposed replacement: (a,c) and (b,d).
        if (a == c || b == d) {
            continue;
        }
        const auto [p1, q1] = ordered(a, c);
        const auto [p2, q2] = ordered(b, d);
        const std::uint64_t k1 = pack_edge(p1, q1);
        const std::uint64_t k2 = pack_edge(p2, q2);
        if (k1 == k2 || present.contains(k1) || present.contains(k2)) {
            continue;
        }
        const auto [oa, ob] = ordered(edges[i].first, edges[i].second);
        const auto [oc, od] = ordered(edges[j].first, edges[j].second);
        present.erase(pack_edge(oa, ob));
        present.erase(pack_edge(oc, od));
        present.insert(k1);
        present.insert(k2);
        edges[i] = {p1, q1};
        edges[j] = {p2, q2};
        ++outcome.swaps_applied;
        outcome.changed = true;
    }
    return outcome;
}

Topology sample_gnm(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
    const std::uint64_t max_edges =
        static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    if (m > max_edges) {
        throw DataError("edge count exceeds simple-graph capacity");
    }
    Topology t;
    t.n = n;
    t.edges.reserve(m);
    if (m == 0) {
        return t;
    }

    std::mt19937_64 rng(splitmix64(seed));
    std::vector<std::uint64_t> keys;
    keys.reserve(m);
    if (m <= max_edges / 2) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(m * 2);
        while (keys.size() < m) {
            const auto a = static_cast<std::uint32_t>(bounded_rand(rng, n));
            const auto b = static_cast<std::uint32_t>(bounded_rand(rng, n));
            if (a == b) {
                continue;
            }
            const auto [lo, hi] = ordered(a, b);
            const std::uint64_t key = pack_edge(lo, hi);
            if (seen.insert(key).second) {
                keys.push_back(key);
            }
        }
    } else {
        // Dense case: partial Fisher-Yates over the full pair list.
        std::vector<std::uint64_t> all;
        all.reserve(max_edges);
        for (std::uint32_t a = 0; a + 1 < n; ++a) {
            for (std::uint32_t b = a + 1; b < n; ++b) {
                all.push_back(pack_edge(a, b));
            }
        }
        for (std::uint64_t i = 0; i < m; ++i) {
            const std::uint64_t j = i + bounded_rand(rng, max_edges - i);
            std::swap(all[i], all[j]);
            keys.push_back(all[i]);
        }
    }
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
        t.edges.push_back({static_cast<std::uint32_t>(key >> 32),
                           static_cast<std::uint32_t>(key & 0xffffffffu)});
    }
    return t;
}

SignificanceOutcome significance_test(const Topology& topology, std::uint64_t observed_z,
                                      const NullModelConfig& config) {
    if (config.replicates == 0) {
        throw DataError("significance test requires at least one replicate");
    }
    SignificanceOutcome outcome;
    outcome.replicates = config.replicates;
    const std::uint64_t m = topology.edges.size();
    bool any_swap = false;
    for (std::uint64_t i = 0; i < config.replicates; ++i) {
        const std::uint64_t replicate_seed = splitmix64(config.master_seed + i);
        Topology null_graph;
        if (config.null_model == NullModel::gnm) {
            null_graph = sample_gnm(topology.n, m, replicate_seed);
            any_swap = true;
        } else {
            auto rewired = rewire_configuration_model(topology, replicate_seed,
                                                      config.swaps_per_edge * m);
            any_swap = any_swap || rewired.changed;
            null_graph = std::move(rewired.topology);
        }
        if (lip_partition(null_graph).z <= observed_z) {
            ++outcome.hits;
        }
    }
    if (!any_swap) {
        outcome.degenerate = true;
        return outcome;
    }
    outcome.p_value = static_cast<double>(1 + outcome.hits) /
                      static_cast<double>(1 + outcome.replicates);
    return outcome;
}

CoreMetrics core_metrics(const DailyGraph& graph, const std::vector<std::uint32_t>& core) {
    CoreMetrics metrics;
    metrics.n_core = core.size();
    if (core.empty()) {
        return metrics;
    }
    std::uint64_t degree_sum = 0;
    for (std::uint32_t v : core) {
        if (v >= graph.node_count()) {
            throw DataError("core node out of range");
        }
        degree_sum += graph.degree(v);
    }
    metrics.avg_core_degree =
        static_cast<double>(degree_sum) / static_cast<double>(core.size());
    return metrics;
}

CorePeripheryResult detect_core_periphery(const DailyGraph& graph,
                                          const NullModelConfig& config) {
    CorePeripheryResult result;
    result.lip = lip_partition(graph);
    result.metrics = core_metrics(graph, result.lip.core);
    result.significance = significance_test(topology_of(graph), result.lip.z, config);
    if (result.significance.p_value.has_value()) {
        result.significant = *result.significance.p_value < config.alpha;
    } else {
        result.significant = config.degenerate_significant;
    }
    return result;
}

}  // namespace netdec
