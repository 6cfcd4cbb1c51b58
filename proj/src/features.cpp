#include "netdec/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace netdec {

namespace {

std::vector<std::uint32_t> component_sizes(const DailyGraph& graph) {
    const std::uint32_t n = graph.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        std::uint32_t size = 0;
        stack.push_back(s);
        seen[s] = true;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            ++size;
            for (std::uint32_t w : graph.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

void require_nonempty(const DailyGraph& graph) {
    if (graph.node_count() == 0) {
        throw DataError("empty graph");
    }
}

// Louvain state for one aggregation level. Edge weights are doubles:
// level 0 uses unit weights, higher levels accumulate them.
struct LevelGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self_weight;  // 2 * weight of internal edges
    std::vector<double> wdeg;         // self_weight + incident weight
    double two_m = 0.0;
};

// One round of local moving. Returns the dense community labels and
// whether any node moved.
bool local_moving(const LevelGraph& lg, std::mt19937_64& rng,
                  std::vector<std::uint32_t>& comm) {
    const std::uint32_t n = lg.n;
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), 0u);
    std::vector<double> tot(lg.wdeg);

    std::vector<std::uint32_t> visit(n);
    std::iota(visit.begin(), visit.end(), 0u);
    for (std::uint32_t i = n; i > 1; --i) {
        std::swap(visit[i - 1], visit[bounded_rand(rng, i)]);
    }

    std::vector<double> w_to(n, 0.0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;
    bool moved = true;
    int pass = 0;
    while (moved && pass < 200) {
        moved = false;
        ++pass;
        for (std::uint32_t i : visit) {
            const std::uint32_t c_old = comm[i];
            touched.clear();
            for (const auto& [j, w] : lg.adj[i]) {
                const std::uint32_t c = comm[j];
                if (w_to[c] == 0.0) {
                    touched.push_back(c);
                }
                w_to[c] += w;
            }
            std::sort(touched.begin(), touched.end());
            tot[c_old] -= lg.wdeg[i];
            double best_gain = w_to[c_old] - tot[c_old] * lg.wdeg[i] / lg.two_m;
            std::uint32_t best_c = c_old;
            for (std::uint32_t c : touched) {
                if (c == c_old) {
                    continue;
                }
                const double gain = w_to[c] - tot[c] * lg.wdeg[i] / lg.two_m;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            tot[best_c] += lg.wdeg[i];
            if (best_c != c_old) {
                comm[i] = best_c;
                moved = true;
                any_move = true;
            }
            for (std::uint32_t c : touched) {
                w_to[c] = 0.0;
            }
        }
    }
    return any_move;
}

// Dense renumbering by first appearance in node order.
std::uint32_t renumber(std::vector<std::uint32_t>& comm) {
    std::vector<std::uint32_t> renum(comm.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (auto& c : comm) {
        if (renum[c] == UINT32_MAX) {
            renum[c] = next++;
        }
        c = renum[c];
    }
    return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm,
                     std::uint32_t community_count) {
    LevelGraph next;
    next.n = community_count;
    next.adj.resize(community_count);
    next.self_weight.assign(community_count, 0.0);
    next.wdeg.assign(community_count, 0.0);
    next.two_m = lg.two_m;

    std::vector<std::vector<std::uint32_t>> members(community_count);
    for (std::uint32_t i = 0; i < lg.n; ++i) {
        members[comm[i]].push_back(i);
    }
    std::vector<double> acc(community_count, 0.0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t c = 0; c < community_count; ++c) {
        double self = 0.0;
        touched.clear();
        for (std::uint32_t i : members[c]) {
            self += lg.self_weight[i];
            for (const auto& [j, w] : lg.adj[i]) {
                const std::uint32_t d = comm[j];
                if (d == c) {
                    self += w;  // both directions accumulate: 2x internal weight
                } else {
                    if (acc[d] == 0.0) {
                        touched.push_back(d);
                    }
                    acc[d] += w;
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        next.self_weight[c] = self;
        double deg = self;
        for (std::uint32_t d : touched) {
            next.adj[c].push_back({d, acc[d]});
            deg += acc[d];
            acc[d] = 0.0;
        }
        next.wdeg[c] = deg;
    }
    return next;
}

}  // namespace

std::uint64_t count_components(const DailyGraph& graph) {
    require_nonempty(graph);
    return component_sizes(graph).size();
}

double largest_component_ratio(const DailyGraph& graph) {
    require_nonempty(graph);
    const auto sizes = component_sizes(graph);
    const std::uint32_t largest = *std::max_element(sizes.begin(), sizes.end());
    return static_cast<double>(largest) / static_cast<double>(graph.node_count());
}

Partition detect_communities(const DailyGraph& graph, std::uint64_t seed) {
    require_nonempty(graph);
    const std::uint32_t n = graph.node_count();

    // Work in address-ranked index space so the outcome does not depend on
    // the interning order of the input rows.
    std::vector<std::uint32_t> by_address(n);
    std::iota(by_address.begin(), by_address.end(), 0u);
    std::sort(by_address.begin(), by_address.end(), [&](std::uint32_t a, std::uint32_t b) {
        return graph.address_of(a) < graph.address_of(b);
    });
    std::vector<std::uint32_t> rank_of(n);
    for (std::uint32_t r = 0; r < n; ++r) {
        rank_of[by_address[r]] = r;
    }

    LevelGraph lg;
    lg.n = n;
    lg.adj.resize(n);
    lg.self_weight.assign(n, 0.0);
    lg.wdeg.assign(n, 0.0);
    for (std::uint32_t r = 0; r < n; ++r) {
        const std::uint32_t v = by_address[r];
        auto& row = lg.adj[r];
        for (std::uint32_t w : graph.neighbors(v)) {
            row.push_back({rank_of[w], 1.0});
        }
        std::sort(row.begin(), row.end());
        lg.wdeg[r] = static_cast<double>(row.size());
        lg.two_m += lg.wdeg[r];
    }

    std::mt19937_64 rng(splitmix64(seed));
    std::vector<std::uint32_t> node_comm(n);
    std::iota(node_comm.begin(), node_comm.end(), 0u);  // canonical node -> community

    for (;;) {
        std::vector<std::uint32_t> comm;
        const bool any_move = local_moving(lg, rng, comm);
        const std::uint32_t count = renumber(comm);
        for (auto& c : node_comm) {
            c = comm[c];
        }
        if (!any_move || count == lg.n) {
            break;
        }
        lg = aggregate(lg, comm, count);
    }

    Partition p;
    p.community_of.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        p.community_of[v] = node_comm[rank_of[v]];
    }
    // Renumber over original node order so ids are dense and stable for a
    // given graph instance.
    p.community_count = renumber(p.community_of);
    return p;
}

double modularity(const DailyGraph& graph, const Partition& partition) {
    require_nonempty(graph);
    if (partition.community_of.size() != graph.node_count()) {
        throw DataError("partition does not cover all nodes");
    }
    const std::uint64_t m = graph.edge_count();
    if (m == 0) {
        throw DataError("undefined modularity: graph has no edges");
    }
    const std::uint32_t k = partition.community_count;
    for (std::uint32_t c : partition.community_of) {
        if (c >= k) {
            throw DataError("partition community id out of range");
        }
    }
    std::vector<std::uint64_t> intra(k, 0);
    std::vector<std::uint64_t> degree_sum(k, 0);
    for (const auto& e : graph.edges()) {
        if (partition.community_of[e.a] == partition.community_of[e.b]) {
            ++intra[partition.community_of[e.a]];
        }
    }
    for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
        degree_sum[partition.community_of[v]] += graph.degree(v);
    }
    double q = 0.0;
    const double dm = static_cast<double>(m);
    for (std::uint32_t c = 0; c < k; ++c) {
        const double frac = static_cast<double>(degree_sum[c]) / (2.0 * dm);
        q += static_cast<double>(intra[c]) / dm - frac * frac;
    }
    return q;
}

double degree_centrality_std(const DailyGraph& graph) {
    const std::uint32_t n = graph.node_count();
    if (n < 2) {
        throw DataError("degree centrality needs at least 2 nodes");
    }
    // Integer degree moments keep regular graphs at exactly zero; the
    // 1/(n-1) normalization is applied once at the end.
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint64_t d = graph.degree(v);
        sum += d;
        sum_sq += d * d;
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    const double var =
        static_cast<double>(sum_sq) / static_cast<double>(n) - mean * mean;
    return std::sqrt(std::max(var, 0.0)) / (static_cast<double>(n) - 1.0);
}

}  // namespace netdec
