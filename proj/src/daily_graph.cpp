#include "netdec/daily_graph.hpp"

#include <algorithm>

namespace netdec {

DailyGraph::DailyGraph(CivilDay day, std::vector<Address> nodes, std::vector<GraphEdge> edges)
    : day_(day), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    const std::uint32_t n = node_count();
    index_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (is_null(nodes_[i])) {
            throw DataError("graph contains the null address");
        }
        if (!index_.emplace(nodes_[i], i).second) {
            throw DataError("duplicate node address " + to_string(nodes_[i]));
        }
    }
    std::vector<std::uint32_t> counts(n, 0);
    for (const auto& e : edges_) {
        if (e.a >= n || e.b >= n || e.a >= e.b) {
            throw DataError("edge endpoints out of order or out of range");
        }
        ++counts[e.a];
        ++counts[e.b];
    }
    adj_offsets_.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        adj_offsets_[i + 1] = adj_offsets_[i] + counts[i];
    }
    adj_.resize(adj_offsets_[n]);
    std::vector<std::uint32_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[cursor[e.a]++] = e.b;
        adj_[cursor[e.b]++] = e.a;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        auto begin = adj_.begin() + adj_offsets_[i];
        auto end = adj_.begin() + adj_offsets_[i + 1];
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end) {
            throw DataError("parallel edges in graph input");
        }
        if (begin == end) {
            throw DataError("isolated node " + to_string(nodes_[i]));
        }
    }
}

bool DailyGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::uint32_t> DailyGraph::index_of(const Address& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

u256 DailyGraph::total_value() const {
    u256 sum = 0;
    for (const auto& e : edges_) {
        sum += e.value;
    }
    return sum;
}

std::uint64_t DailyGraph::total_transfers() const {
    std::uint64_t sum = 0;
    for (const auto& e : edges_) {
        sum += e.transfers;
    }
    return sum;
}

DailyGraph build_daily_graph(CivilDay day, std::span<const TransferRecord> records) {
    if (records.empty()) {
        throw DataError("empty day " + format_day(day));
    }
    std::vector<Address> nodes;
    std::unordered_map<Address, std::uint32_t> index;
    index.reserve(records.size() * 2);
    auto intern = [&](const Address& a) -> std::uint32_t {
        auto [it, inserted] = index.emplace(a, static_cast<std::uint32_t>(nodes.size()));
        if (inserted) {
            nodes.push_back(a);
        }
        return it->second;
    };

    std::vector<GraphEdge> edges;
    std::unordered_map<std::uint64_t, std::size_t> edge_slot;
    edge_slot.reserve(records.size() * 2);
    for (const auto& rec : records) {
        if (day_of(rec.timestamp) != day) {
            throw DataError("record timestamp outside day " + format_day(day));
        }
        if (is_null(rec.from) || is_null(rec.to) || rec.from == rec.to) {
            throw DataError("unfiltered record reached graph construction");
        }
        const std::uint32_t u = intern(rec.from);
        const std::uint32_t v = intern(rec.to);
        const std::uint32_t a = std::min(u, v);
        const std::uint32_t b = std::max(u, v);
        const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto [it, inserted] = edge_slot.emplace(key, edges.size());
        if (inserted) {
            edges.push_back(GraphEdge{a, b, rec.value, 1});
        } else {
            auto& e = edges[it->second];
            e.value += rec.value;
            ++e.transfers;
        }
    }
    return DailyGraph(day, std::move(nodes), std::move(edges));
}

}  // namespace netdec
