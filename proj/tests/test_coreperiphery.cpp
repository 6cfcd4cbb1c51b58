#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "netdec/coreperiphery.hpp"
#include "test_support.hpp"

using namespace netdec;

namespace {

std::vector<bool> mask_of(std::uint32_t n, const std::vector<std::uint32_t>& core) {
    std::vector<bool> in_core(n, false);
    for (auto v : core) {
        in_core[v] = true;
    }
    return in_core;
}

std::multiset<std::uint32_t> degree_sequence(const Topology& t) {
    std::vector<std::uint32_t> deg(t.n, 0);
    for (const auto& [a, b] : t.edges) {
        ++deg[a];
        ++deg[b];
    }
    return {deg.begin(), deg.end()};
}

bool is_simple(const Topology& t) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [a, b] : t.edges) {
        if (a == b || a >= t.n || b >= t.n) {
            return false;
        }
        if (b < a) {
            std::swap(a, b);
        }
        if (!seen.insert({a, b}).second) {
            return false;
        }
    }
    return true;
}

// Star with `leaves` leaves on node 0.
Topology star(std::uint32_t leaves) {
    Topology t;
    t.n = leaves + 1;
    for (std::uint32_t i = 1; i <= leaves; ++i) {
        t.edges.emplace_back(0, i);
    }
    return t;
}

}  // namespace

TEST_CASE("error counts missing core edges plus present periphery edges") {
    const auto s = star(4);
    CHECK(borgatti_everett_error(s, mask_of(5, {0})) == 0);
    // Two leaves as core: one missing core-core pair, two periphery edges.
    CHECK(borgatti_everett_error(s, mask_of(5, {1, 2})) == 3);
    const auto triangle = testsup::make_graph({{0, 1}, {1, 2}, {2, 0}});
    const auto topo = topology_of(triangle);
    CHECK(borgatti_everett_error(topo, mask_of(3, {})) == 3);
    CHECK(borgatti_everett_error(topo, mask_of(3, {0, 1, 2})) == 0);
    // All-core error is C(n,2) - |E| in general.
    const auto path = topology_of(testsup::make_graph({{0, 1}, {1, 2}, {2, 3}}));
    CHECK(borgatti_everett_error(path, mask_of(4, {0, 1, 2, 3})) == 6 - 3);
}

TEST_CASE("prefix search finds the hub of a star") {
    const auto res = lip_partition(star(6));
    CHECK(res.core == std::vector<std::uint32_t>{0});
    CHECK(res.z == 0);
}

TEST_CASE("prefix search on a triangle keeps two nodes at zero error") {
    const auto res = lip_partition(topology_of(testsup::make_graph({{0, 1}, {1, 2}, {2, 0}})));
    CHECK(res.z == 0);
    // Smallest core among the zero-error prefixes: two nodes.
    CHECK(res.core.size() == 2);
}

TEST_CASE("prefix search on a path picks the middle node") {
    const auto graph = testsup::make_graph({{0, 1}, {1, 2}});
    const auto res = lip_partition(graph);
    CHECK(res.core == std::vector<std::uint32_t>{1});
    CHECK(res.z == 0);
}

TEST_CASE("reported error always matches a direct recount") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto topo = testsup::random_graph(12, 0.25, 500 + seed);
        if (topo.edges.empty()) {
            continue;
        }
        const auto res = lip_partition(topo);
        CHECK(res.z == borgatti_everett_error(topo, mask_of(topo.n, res.core)));
        CHECK(std::is_sorted(res.core.begin(), res.core.end()));
    }
}

TEST_CASE("prefix minimum equals the exhaustive minimum over all subsets") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto topo = testsup::random_graph(9, 0.3, 900 + seed);
        if (topo.edges.empty()) {
            continue;
        }
        const auto res = lip_partition(topo);
        CHECK(res.z == testsup::brute_force_min_error(topo));
    }
}

TEST_CASE("address ordering breaks degree ties deterministically") {
    // Two disjoint edges: all degrees equal, so the address order decides.
    const auto graph = testsup::make_graph({{3, 2}, {1, 0}});
    const auto res = lip_partition(graph);
    const auto again = lip_partition(graph);
    CHECK(res.core == again.core);
    CHECK(res.z == again.z);
    CHECK(res.z == borgatti_everett_error(topology_of(graph),
                                          mask_of(graph.node_count(), res.core)));
}

TEST_CASE("rewiring preserves the degree sequence and simplicity") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto topo = testsup::random_graph(20, 0.2, seed);
        const auto out = rewire_configuration_model(topo, seed, 10 * topo.edges.size());
        CHECK(out.topology.n == topo.n);
        CHECK(out.topology.edges.size() == topo.edges.size());
        CHECK(degree_sequence(out.topology) == degree_sequence(topo));
        CHECK(is_simple(out.topology));
    }
}

TEST_CASE("rewiring is deterministic in the seed") {
    const auto topo = testsup::random_graph(16, 0.3, 77);
    const auto a = rewire_configuration_model(topo, 5, 200);
    const auto b = rewire_configuration_model(topo, 5, 200);
    const auto c = rewire_configuration_model(topo, 6, 200);
    CHECK(a.topology.edges == b.topology.edges);
    CHECK(a.swaps_applied == b.swaps_applied);
    // A different seed should usually move at least one edge on this size.
    CHECK(a.topology.edges != c.topology.edges);
}

TEST_CASE("swap-frozen graphs come back unchanged") {
    const auto triangle = topology_of(testsup::make_graph({{0, 1}, {1, 2}, {2, 0}}));
    const auto out = rewire_configuration_model(triangle, 9, 500);
    CHECK_FALSE(out.changed);
    CHECK(out.swaps_applied == 0);
    CHECK(out.topology.edges == triangle.edges);

    Topology single;
    single.n = 2;
    single.edges = {{0, 1}};
    const auto lone = rewire_configuration_model(single, 1, 100);
    CHECK_FALSE(lone.changed);
}

TEST_CASE("uniform random graphs hit the requested size and stay simple") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto t = sample_gnm(30, 60, seed);
        CHECK(t.n == 30);
        CHECK(t.edges.size() == 60);
        CHECK(is_simple(t));
    }
    // Dense request near C(n,2) exercises the non-rejection path.
    const auto dense = sample_gnm(12, 60, 3);
    CHECK(dense.edges.size() == 60);
    CHECK(is_simple(dense));
    const auto full = sample_gnm(5, 10, 1);
    CHECK(full.edges.size() == 10);
    CHECK(sample_gnm(30, 60, 4).edges == sample_gnm(30, 60, 4).edges);
    CHECK_THROWS_AS(sample_gnm(5, 11, 0), DataError);
}

TEST_CASE("uniform sampling covers pairs roughly evenly") {
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
        for (const auto& e : sample_gnm(5, 3, 7000 + seed).edges) {
            ++counts[e];
        }
    }
    CHECK(counts.size() == 10);  // every pair of K5 appears
    for (const auto& [pair, c] : counts) {
        CHECK(c > 100);  // expectation is 180 per pair
        CHECK(c < 260);
    }
}

TEST_CASE("planted cores test as significant, plus-one bounds hold") {
    // K6 core, 40 peripherals with two core links each.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t a = 0; a < 6; ++a) {
        for (std::uint32_t b = a + 1; b < 6; ++b) {
            edges.emplace_back(a, b);
        }
    }
    for (std::uint32_t p = 0; p < 40; ++p) {
        edges.emplace_back(6 + p, p % 6);
        edges.emplace_back(6 + p, (p + 1) % 6);
    }
    Topology topo;
    topo.n = 46;
    topo.edges = edges;

    const auto lip = lip_partition(topo);
    NullModelConfig config;
    config.replicates = 99;
    config.master_seed = 11;
    config.null_model = NullModel::gnm;
    const auto sig = significance_test(topo, lip.z, config);
    REQUIRE(sig.p_value.has_value());
    CHECK(*sig.p_value >= 1.0 / 100.0);
    CHECK(*sig.p_value <= 1.0);
    CHECK(*sig.p_value < 0.05);
    CHECK(sig.replicates == 99);
    CHECK_FALSE(sig.degenerate);

    // The prefix error is a function of the degree sequence alone, so a
    // degree-preserving null reproduces the observed error on every
    // replicate and the test can never reject.
    config.null_model = NullModel::degree_preserving;
    const auto frozen = significance_test(topo, lip.z, config);
    REQUIRE(frozen.p_value.has_value());
    CHECK(*frozen.p_value == 1.0);
    CHECK(frozen.hits == 99);
    CHECK_FALSE(frozen.degenerate);
}

TEST_CASE("degree-preserving nulls degenerate on swap-frozen graphs") {
    const auto triangle = topology_of(testsup::make_graph({{0, 1}, {1, 2}, {2, 0}}));
    NullModelConfig config;
    config.null_model = NullModel::degree_preserving;
    config.replicates = 20;
    const auto sig = significance_test(triangle, 0, config);
    CHECK(sig.degenerate);
    CHECK_FALSE(sig.p_value.has_value());

    // The uniform null still produces a p-value on the same graph.
    config.null_model = NullModel::gnm;
    const auto uniform = significance_test(triangle, 0, config);
    CHECK_FALSE(uniform.degenerate);
    CHECK(uniform.p_value.has_value());
}

TEST_CASE("zero replicates is a configuration error") {
    NullModelConfig config;
    config.replicates = 0;
    CHECK_THROWS_AS(significance_test(star(3), 0, config), DataError);
}

TEST_CASE("core metrics average raw degree over the core") {
    const auto star5 = testsup::make_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(core_metrics(star5, {0}).n_core == 1);
    CHECK(core_metrics(star5, {0}).avg_core_degree == doctest::Approx(4.0));
    const auto path = testsup::make_graph({{0, 1}, {1, 2}, {2, 3}});
    const auto m = core_metrics(path, {0, 1, 2});
    CHECK(m.n_core == 3);
    CHECK(m.avg_core_degree == doctest::Approx((1 + 2 + 2) / 3.0));
    CHECK(core_metrics(path, {}).n_core == 0);
    CHECK(core_metrics(path, {}).avg_core_degree == 0.0);
}

TEST_CASE("full detection ties the pieces together") {
    // Star: hub core, perfect pattern, z = 0.
    const auto graph = testsup::make_graph(
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 2}});
    NullModelConfig config;
    config.replicates = 49;
    config.master_seed = 3;
    const auto res = detect_core_periphery(graph, config);
    CHECK(res.lip.z == borgatti_everett_error(topology_of(graph),
                                              mask_of(graph.node_count(), res.lip.core)));
    CHECK(res.metrics.n_core == res.lip.core.size());
    REQUIRE(res.significance.p_value.has_value());
    CHECK(res.significant == (*res.significance.p_value < config.alpha));
}
