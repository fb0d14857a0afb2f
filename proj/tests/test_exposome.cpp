#include "exposome/graph.hpp"

#include "support/oracle.hpp"
#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace exposome;

namespace {

std::vector<Code> cortege(std::initializer_list<const char *> codes) {
    std::vector<Code> out;
    for (const char *c : codes)
        out.push_back(parse_code(Axis::Exposure, c));
    std::sort(out.begin(), out.end());
    return out;
}

Node make_node(const char *disease, std::initializer_list<const char *> exposures,
               int weight) {
    Node n;
    n.key.disease = parse_code(Axis::Disease, disease);
    n.key.exposures = cortege(exposures);
    n.weight = weight;
    return n;
}

} // namespace

TEST_CASE("connection strength is the gated intersection size") {
    CHECK(connection_strength(cortege({"X"}), cortege({"X"}), 1, 1, 1) == 1);
    CHECK(connection_strength(cortege({"X", "Y"}), cortege({"Z"}), 9, 9, 1) == 0);
    CHECK(connection_strength(cortege({"A", "B", "C"}), cortege({"B", "C", "D"}), 5, 9, 10) == 0);
    CHECK(connection_strength(cortege({"A", "B", "C"}), cortege({"B", "C", "D"}), 12, 10, 10) == 2);
    // inclusive gate: w == eta passes
    CHECK(connection_strength(cortege({"A"}), cortege({"A"}), 10, 10, 10) == 1);
}

TEST_CASE("connection strength is symmetric") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> size(1, 5), code(0, 8), w(1, 4);
    auto random_cortege = [&] {
        std::vector<Code> out;
        int want = size(rng);
        while (static_cast<int>(out.size()) < want) {
            Code c = synthetic::make_code(Axis::Exposure, code(rng));
            if (std::find(out.begin(), out.end(), c) == out.end())
                out.push_back(c);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int i = 0; i < 200; ++i) {
        auto a = random_cortege(), b = random_cortege();
        int wa = w(rng), wb = w(rng), eta = w(rng);
        CHECK(connection_strength(a, b, wa, wb, eta) == connection_strength(b, a, wb, wa, eta));
    }
}

TEST_CASE("empty input yields the empty exposome") {
    auto g = build({}, {});
    CHECK(g.total_ohp() == 0);
    CHECK(g.node_count() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("three nodes, one shared exposure, one edge") {
    auto g = build({make_node("C1", {"A"}, 1), make_node("C2", {"A"}, 1),
                    make_node("C3", {"B"}, 1)},
                   {1, 1});
    CHECK(g.node_count() == 3);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges[0].a == 0);
    CHECK(g.edges[0].b == 1);
    CHECK(g.edges[0].shared == cortege({"A"}));
}

TEST_CASE("eta filters nodes out of the graph entirely") {
    auto g = build({make_node("C1", {"A"}, 5), make_node("C2", {"A"}, 1)}, {1, 2});
    CHECK(g.node_count() == 1);
    CHECK(g.total_ohp() == 5);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("build equals the quadratic oracle on seeded fixtures") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto records = synthetic::records(seed);
        auto nodes = dedupe(records, KeyMode::Cortege);
        for (int d : {1, 2, 3})
            for (int eta : {1, 2}) {
                ExposomeParams params{d, eta};
                auto fast = build(nodes, params);
                auto slow = oracle::quadratic_build(nodes, params);
                REQUIRE(fast.node_count() == slow.node_count());
                CHECK(oracle::edge_pairs(fast) == oracle::edge_pairs(slow));
            }
    }
}

TEST_CASE("edge invariants") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto nodes = dedupe(synthetic::records(seed), KeyMode::Cortege);
        auto g = build(nodes, {2, 1});
        for (const auto &e : g.edges) {
            CHECK(e.a < e.b); // no self-loops, canonical order
            CHECK(e.strength() >= 2);
            CHECK(e.strength() <= 5);
            CHECK(e.strength() <=
                  static_cast<int>(std::min(g.nodes[e.a].key.exposures.size(),
                                            g.nodes[e.b].key.exposures.size())));
            // the shared set is exactly the cortege intersection
            CHECK(e.strength() ==
                  connection_strength(g.nodes[e.a].key.exposures, g.nodes[e.b].key.exposures,
                                      g.nodes[e.a].weight, g.nodes[e.b].weight, 1));
            for (const auto &c : e.shared) {
                CHECK(std::binary_search(g.nodes[e.a].key.exposures.begin(),
                                         g.nodes[e.a].key.exposures.end(), c));
                CHECK(std::binary_search(g.nodes[e.b].key.exposures.begin(),
                                         g.nodes[e.b].key.exposures.end(), c));
            }
        }
    }
}

TEST_CASE("monotonicity in D and eta") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto nodes = dedupe(synthetic::records(seed), KeyMode::Cortege);
        auto g11 = build(nodes, {1, 1});
        auto g21 = build(nodes, {2, 1});
        auto g12 = build(nodes, {1, 2});

        auto e11 = oracle::edge_pairs(g11);
        for (auto &p : oracle::edge_pairs(g21))
            CHECK(e11.count(p) == 1);
        CHECK(g12.node_count() <= g11.node_count());
    }
}

TEST_CASE("rebuild tightens without touching the node list") {
    auto nodes = dedupe(synthetic::records(42), KeyMode::Cortege);
    auto g = build(nodes, {1, 1});

    SECTION("identity tighten") {
        auto same = rebuild(g, {1, 1});
        CHECK(oracle::edge_pairs(same) == oracle::edge_pairs(g));
        CHECK(same.node_count() == g.node_count());
    }
    SECTION("tighten D removes weak edges only") {
        auto tight = rebuild(g, {2, 1});
        auto direct = build(nodes, {2, 1});
        CHECK(oracle::edge_pairs(tight) == oracle::edge_pairs(direct));
    }
    SECTION("tighten eta matches a fresh build") {
        auto tight = rebuild(g, {1, 2});
        auto direct = build(nodes, {1, 2});
        REQUIRE(tight.node_count() == direct.node_count());
        CHECK(oracle::edge_pairs(tight) == oracle::edge_pairs(direct));
        CHECK(tight.total_ohp() == direct.total_ohp());
    }
    SECTION("loosening is refused") {
        auto g2 = build(nodes, {2, 2});
        CHECK_THROWS_AS(rebuild(g2, {1, 2}), ParamLoosenedError);
        CHECK_THROWS_AS(rebuild(g2, {2, 1}), ParamLoosenedError);
    }
}
