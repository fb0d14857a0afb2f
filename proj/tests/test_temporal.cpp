#include "exposome/temporal.hpp"

#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace exposome;

namespace {

OhpRecord make_record(const std::string &id, int year, int disease,
                      std::initializer_list<int> exposures, int occupation = 0,
                      int sector = 0) {
    OhpRecord rec;
    rec.record_id = id;
    rec.year = year;
    rec.disease = synthetic::make_code(Axis::Disease, disease);
    for (int e : exposures)
        rec.exposures.push_back(synthetic::make_code(Axis::Exposure, e));
    std::sort(rec.exposures.begin(), rec.exposures.end());
    rec.occupation = synthetic::make_code(Axis::Occupation, occupation);
    rec.sector = synthetic::make_code(Axis::Sector, sector);
    return rec;
}

} // namespace

TEST_CASE("bad cutoffs are refused") {
    CHECK_THROWS_AS(snapshot_diff({}, 2007, 2007, KeyMode::Cortege), BadCutoffsError);
    CHECK_THROWS_AS(snapshot_diff({}, 2008, 2006, KeyMode::Cortege), BadCutoffsError);
}

TEST_CASE("no records in the window means an empty diff") {
    std::vector<OhpRecord> records{make_record("r1", 2002, 0, {0}),
                                   make_record("r2", 2003, 1, {1})};
    auto diff = snapshot_diff(records, 2004, 2007, KeyMode::Cortege);
    CHECK(diff.new_nodes.empty());
    CHECK(diff.incremented.empty());
    CHECK(diff.new_edges.empty());
}

TEST_CASE("baseline-plus-additions fixture yields 10 new and 5 incremented") {
    // 62 baseline records over 2002-2006 spread across 20 distinct keys,
    // then 15 records in 2007: 10 carry never-seen keys, 5 repeat old ones.
    std::vector<OhpRecord> records;
    int id = 0;
    for (int i = 0; i < 62; ++i) {
        int key = i % 20;
        records.push_back(make_record("b" + std::to_string(id++), 2002 + i % 5, key % 4,
                                      {key, key + 20}));
    }
    for (int i = 0; i < 10; ++i)
        records.push_back(
            make_record("n" + std::to_string(id++), 2007, i % 4, {100 + i, 120 + i}));
    for (int i = 0; i < 5; ++i)
        records.push_back(
            make_record("o" + std::to_string(id++), 2007, i % 4, {i, i + 20}));

    auto diff = snapshot_diff(records, 2006, 2007, KeyMode::Cortege);
    CHECK(diff.new_nodes.size() == 10);
    CHECK(diff.incremented.size() == 5);
    for (const auto &d : diff.new_nodes)
        CHECK(d.delta() >= 1);
    for (const auto &d : diff.incremented) {
        CHECK(d.delta() == 1);
        CHECK(d.weight_t1 >= 1);
    }
}

TEST_CASE("random splits match an independent key-map comparison") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto records = synthetic::records(seed);
        const int t1 = 2004, t2 = 2006;
        auto diff = snapshot_diff(records, t1, t2, KeyMode::Cortege);

        // recompute both key->weight maps straight from the records
        std::map<NodeKey, int> w1, w2;
        for (const auto &r : records) {
            if (r.year <= t1)
                ++w1[node_key(r, KeyMode::Cortege)];
            if (r.year <= t2)
                ++w2[node_key(r, KeyMode::Cortege)];
        }
        std::size_t expect_new = 0, expect_inc = 0;
        long long moved = 0;
        for (const auto &[key, w] : w2) {
            auto it = w1.find(key);
            if (it == w1.end()) {
                ++expect_new;
                moved += w;
            } else if (w > it->second) {
                ++expect_inc;
                moved += w - it->second;
            }
        }
        CHECK(diff.new_nodes.size() == expect_new);
        CHECK(diff.incremented.size() == expect_inc);

        // cumulative monotonicity and conservation over the window
        for (const auto &[key, w] : w1) {
            REQUIRE(w2.count(key) == 1);
            CHECK(w2.at(key) >= w);
        }
        long long window = 0;
        for (const auto &r : records)
            if (r.year > t1 && r.year <= t2)
                ++window;
        CHECK(moved == window);
    }
}

TEST_CASE("new edges appear only at t2") {
    std::vector<OhpRecord> records{
        make_record("r1", 2002, 0, {1}), make_record("r2", 2002, 1, {2}),
        make_record("r3", 2007, 2, {1, 2})}; // links both earlier nodes
    auto diff = snapshot_diff(records, 2006, 2007, KeyMode::Cortege);
    CHECK(diff.new_nodes.size() == 1);
    CHECK(diff.new_edges.size() == 2);
}

TEST_CASE("projection counts constituent OHP per code") {
    std::vector<OhpRecord> records{
        make_record("r1", 2002, 0, {1}, /*occupation=*/7), make_record("r2", 2003, 0, {1}, 7),
        make_record("r3", 2004, 0, {1}, 7), make_record("r4", 2005, 0, {1}, 8)};
    auto g = build(dedupe(records, KeyMode::Cortege), {1, 1});
    REQUIRE(g.node_count() == 1);

    auto overlay = project(g, Axis::Occupation,
                           {synthetic::make_code(Axis::Occupation, 7)});
    REQUIRE(overlay.per_node.size() == 1);
    CHECK(overlay.per_node.at(0).begin()->second == 3);
}

TEST_CASE("absent codes give an empty overlay") {
    auto g = build(dedupe(synthetic::records(5), KeyMode::Cortege), {1, 1});
    auto overlay = project(g, Axis::Sector, {synthetic::make_code(Axis::Sector, 999)});
    CHECK(overlay.per_node.empty());
}

TEST_CASE("projection rejects non-attribute axes") {
    Exposome g;
    CHECK_THROWS_AS(project(g, Axis::Disease, {}), UnknownAxisError);
    CHECK_THROWS_AS(project(g, Axis::Exposure, {}), UnknownAxisError);
}

TEST_CASE("per-node projection counts sum to the node weight") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = build(dedupe(synthetic::records(seed), KeyMode::Cortege), {1, 1});
        // select every occupation code present anywhere
        std::set<Code> all;
        for (const auto &n : g.nodes)
            for (const auto &[c, count] : n.occupations)
                all.insert(c);
        auto overlay =
            project(g, Axis::Occupation, std::vector<Code>(all.begin(), all.end()));
        for (const auto &[node, hits] : overlay.per_node) {
            int total = 0;
            for (const auto &[c, count] : hits) {
                CHECK(count <= g.nodes[node].weight);
                total += count;
            }
            CHECK(total == g.nodes[node].weight);
        }
    }
}

TEST_CASE("overlay marks exactly the hand-tallied benzene nodes") {
    // two occupations spread over benzene-sharing nodes
    std::vector<OhpRecord> records{make_record("r1", 2002, 0, {50}, 1),
                                   make_record("r2", 2003, 1, {50, 51}, 1),
                                   make_record("r3", 2004, 2, {50}, 2),
                                   make_record("r4", 2005, 3, {52}, 2)};
    auto g = build(dedupe(records, KeyMode::Cortege), {1, 1});
    auto occ1 = synthetic::make_code(Axis::Occupation, 1);
    auto occ2 = synthetic::make_code(Axis::Occupation, 2);
    auto overlay = project(g, Axis::Occupation, {occ1, occ2});
    REQUIRE(overlay.per_node.size() == 4);
    CHECK(overlay.per_node.at(0).at(occ1) == 1);
    CHECK(overlay.per_node.at(1).at(occ1) == 1);
    CHECK(overlay.per_node.at(2).at(occ2) == 1);
    CHECK(overlay.per_node.at(3).at(occ2) == 1);
}
