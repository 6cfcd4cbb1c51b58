#pragma once

#include "netdec/address.hpp"
#include "netdec/common.hpp"
#include "netdec/timeutil.hpp"
#include "netdec/transfer.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace netdec {

// Undirected weighted edge between node indices, a < b. The weight is the
// exact sum of same-day transfer values between the pair in either
// direction; transfers counts how many rows were aggregated.
struct GraphEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    u256 value;
    std::uint64_t transfers = 0;
};

// Immutable undirected simple graph for one UTC day. Node indices are
// dense and assigned by first appearance in the input (from before to).
// Every node has degree >= 1: nodes exist only via edges.
class DailyGraph {
public:
    DailyGraph(CivilDay day, std::vector<Address> nodes, std::vector<GraphEdge> edges);

    CivilDay day() const { return day_; }
    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    std::uint64_t edge_count() const { return edges_.size(); }

    const std::vector<Address>& nodes() const { return nodes_; }
    const Address& address_of(std::uint32_t v) const { return nodes_[v]; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    std::uint32_t degree(std::uint32_t v) const {
        return adj_offsets_[v + 1] - adj_offsets_[v];
    }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    std::optional<std::uint32_t> index_of(const Address& a) const;

    // Exact sum of edge values / aggregated transfer rows.
    u256 total_value() const;
    std::uint64_t total_transfers() const;

private:
    CivilDay day_;
    std::vector<Address> nodes_;
    std::vector<GraphEdge> edges_;
    std::vector<std::uint32_t> adj_offsets_;  // CSR layout, size node_count()+1
    std::vector<std::uint32_t> adj_;          // neighbor lists, sorted per node
    std::unordered_map<Address, std::uint32_t> index_;
};

// Aggregates one day's filtered records into a graph. Throws DataError on
// an empty day or on records with a null/self-loop endpoint (the filter
// must run first).
DailyGraph build_daily_graph(CivilDay day, std::span<const TransferRecord> records);

}  // namespace netdec
