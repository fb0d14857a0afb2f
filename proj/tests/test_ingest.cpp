#include "exposome/ingest.hpp"

#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

using namespace exposome;

namespace {

const char *kHeader =
    "record_id,year,disease,exposure1,exposure2,exposure3,exposure4,exposure5,occupation,sector\n";

ParseResult parse(const std::string &body) {
    std::istringstream in(kHeader + body);
    return parse_records(in);
}

} // namespace

TEST_CASE("duplicate exposures inside one record collapse") {
    auto result = parse("r1,2005,C85,02.03,02.03,04.01,,,31.15,D\n");
    REQUIRE(result.accepted.size() == 1);
    CHECK(result.accepted[0].exposures.size() == 2);
    CHECK(result.rejected.empty());
}

TEST_CASE("six distinct exposures is too many") {
    // only five exposure columns exist; jsonl can carry more
    std::istringstream in(
        R"({"record_id":"r1","year":2005,"disease":"C85","exposures":["1","2","3","4","5","6"],"occupation":"31","sector":"D"})");
    auto result = parse_records(in);
    CHECK(result.accepted.empty());
    REQUIRE(result.rejected.size() == 1);
    CHECK(result.rejected[0].reason == "TooManyExposures");
}

TEST_CASE("ten-row fixture with two malformed rows") {
    auto result = parse("r1,2002,C85,02.03,,,,,31,D\n"
                        "r2,2002,C85,02.03,04.01,,,,31,D\n"
                        "r3,2003,C85,05.01,,,,,32,E\n"
                        "r4,1850,C85,02.03,,,,,31,D\n" // BadYear
                        "r5,2004,C34,06.02,,,,,33,F\n"
                        "r6,2004,C34,06..02,,,,,33,F\n" // BadCode
                        "r7,2005,C85,07.01,,,,,31,D\n"
                        "r8,2005,C85,02.03,,,,,31,D\n"
                        "r9,2006,J45,08.01,,,,,34,G\n"
                        "r10,2006,J45,08.01,09.01,,,,34,G\n");
    CHECK(result.accepted.size() == 8);
    REQUIRE(result.rejected.size() == 2);
    CHECK(result.rejected[0].row == 4);
    CHECK(result.rejected[0].reason == "BadYear");
    CHECK(result.rejected[1].row == 6);
    CHECK(result.rejected[1].reason == "BadCode");
}

TEST_CASE("missing fields are rejected per row") {
    auto result = parse(",2002,C85,02.03,,,,,31,D\n"
                        "r2,,C85,02.03,,,,,31,D\n"
                        "r3,2002,,02.03,,,,,31,D\n"
                        "r4,2002,C85,,,,,,31,D\n"
                        "r5,2002,C85,02.03,,,,,,D\n"
                        "r6,2002,C85,02.03,,,,,31,\n");
    CHECK(result.accepted.empty());
    CHECK(result.rejected.size() == 6);
    for (const auto &r : result.rejected)
        CHECK((r.reason == "MissingField"));
}

TEST_CASE("jsonl input with the same field names") {
    std::istringstream in(
        R"({"record_id":"j1","year":2005,"disease":"C85","exposures":["02.03","04.01"],"occupation":"31.15","sector":"D"})"
        "\n"
        R"({"record_id":"j2","year":"2006","disease":"C85","exposures":["02.03"],"occupation":"31.15","sector":"D"})"
        "\n");
    auto result = parse_records(in);
    REQUIRE(result.accepted.size() == 2);
    CHECK(result.accepted[0].exposures.size() == 2);
    CHECK(result.accepted[1].year == 2006);
}

TEST_CASE("aggregation level applies at parse time") {
    ParseOptions opt;
    opt.agg_exposure = 1;
    std::istringstream in(std::string(kHeader) + "r1,2005,C85,02.03,02.07,,,,31,D\n");
    auto result = parse_records(in, opt);
    REQUIRE(result.accepted.size() == 1);
    // both exposures collapse to "02" after aggregation
    CHECK(result.accepted[0].exposures.size() == 1);
    CHECK(result.accepted[0].exposures[0].raw == "02");
}

TEST_CASE("cortege order does not matter for dedupe") {
    auto result = parse("r1,2005,C85,A,B,,,,31,D\n"
                        "r2,2005,C85,B,A,,,,31,D\n");
    auto nodes = dedupe(result.accepted, KeyMode::Cortege);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].weight == 2);
}

TEST_CASE("key mode controls whether occupation splits nodes") {
    auto result = parse("r1,2005,C85,A,,,,,31,D\n"
                        "r2,2005,C85,A,,,,,32,D\n");
    auto cortege = dedupe(result.accepted, KeyMode::Cortege);
    REQUIRE(cortege.size() == 1);
    CHECK(cortege[0].weight == 2);
    CHECK(cortege[0].occupations.size() == 2);

    auto strict = dedupe(result.accepted, KeyMode::Strict);
    CHECK(strict.size() == 2);
}

TEST_CASE("twelve-record fixture dedupes to seven nodes") {
    auto result = parse("r1,2002,C85,A,B,,,,31,D\n"
                        "r2,2003,C85,B,A,,,,32,D\n"
                        "r3,2004,C85,A,B,,,,31,E\n"
                        "r4,2002,C85,A,,,,,31,D\n"
                        "r5,2003,C85,A,,,,,31,D\n"
                        "r6,2002,C34,A,,,,,31,D\n"
                        "r7,2003,C34,A,,,,,31,D\n"
                        "r8,2002,J45,C,,,,,33,F\n"
                        "r9,2004,J45,C,,,,,33,F\n"
                        "r10,2002,J45,D,,,,,33,F\n"
                        "r11,2002,C34,B,C,,,,31,D\n"
                        "r12,2003,C85,E,,,,,31,D\n");
    REQUIRE(result.accepted.size() == 12);
    auto nodes = dedupe(result.accepted, KeyMode::Cortege);
    REQUIRE(nodes.size() == 7);
    std::vector<int> weights;
    for (const auto &n : nodes)
        weights.push_back(n.weight);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    CHECK(weights == std::vector<int>{3, 2, 2, 2, 1, 1, 1});
}

TEST_CASE("node ids are dense and in first-appearance order") {
    auto result = parse("r1,2005,C85,A,,,,,31,D\n"
                        "r2,2005,C34,B,,,,,31,D\n"
                        "r3,2005,C85,A,,,,,31,D\n");
    auto nodes = dedupe(result.accepted, KeyMode::Cortege);
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].id == 0);
    CHECK(nodes[0].key.disease.raw == "C85");
    CHECK(nodes[1].id == 1);
}

TEST_CASE("weight conservation and permutation invariance") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto records = synthetic::records(seed);
        for (KeyMode mode : {KeyMode::Cortege, KeyMode::Strict}) {
            auto nodes = dedupe(records, mode);
            long long total = 0;
            for (const auto &n : nodes) {
                total += n.weight;
                CHECK(n.weight >= 1);
                // weight equals each attribute multiset's size
                int years = 0, occ = 0, sec = 0;
                for (auto &[k, v] : n.years)
                    years += v;
                for (auto &[k, v] : n.occupations)
                    occ += v;
                for (auto &[k, v] : n.sectors)
                    sec += v;
                CHECK(years == n.weight);
                CHECK(occ == n.weight);
                CHECK(sec == n.weight);
            }
            CHECK(total == static_cast<long long>(records.size()));
        }

        // same key -> weight map for any input order
        auto shuffled = records;
        std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(seed * 13));
        auto key_weights = [](const std::vector<Node> &nodes) {
            std::map<NodeKey, int> out;
            for (const auto &n : nodes)
                out[n.key] = n.weight;
            return out;
        };
        CHECK(key_weights(dedupe(records, KeyMode::Cortege)) ==
              key_weights(dedupe(shuffled, KeyMode::Cortege)));

        // strict never yields fewer nodes
        CHECK(dedupe(records, KeyMode::Strict).size() >=
              dedupe(records, KeyMode::Cortege).size());
    }
}

TEST_CASE("rejects sidecar format") {
    std::ostringstream out;
    write_rejects(out, {{4, "BadYear"}, {6, "BadCode"}});
    CHECK(out.str() == "row,reason\n4,BadYear\n6,BadCode\n");
}
