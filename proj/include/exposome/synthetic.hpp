#ifndef EXPOSOME_SYNTHETIC_HPP
#define EXPOSOME_SYNTHETIC_HPP

// Seeded generators for random record sets. std::mt19937_64 with explicit
// seeds keeps every fixture reproducible across platforms.

#include "exposome/ingest.hpp"

#include <cmath>

#include <random>
#include <string>
#include <vector>

namespace exposome::synthetic {

using exposome::Axis;
using exposome::Code;
using exposome::OhpRecord;

inline Code make_code(Axis axis, int value) {
    return exposome::parse_code(axis, "C" + std::to_string(value));
}

struct Params {
    int record_count = 40;
    int exposure_codes = 10;
    int disease_codes = 4;
    int occupation_codes = 5;
    int sector_codes = 3;
    int max_cortege = 5;
    int year_min = 2002;
    int year_max = 2007;
};

inline std::vector<OhpRecord> records(std::uint64_t seed, const Params &p = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> exposure(0, p.exposure_codes - 1);
    std::uniform_int_distribution<int> disease(0, p.disease_codes - 1);
    std::uniform_int_distribution<int> occupation(0, p.occupation_codes - 1);
    std::uniform_int_distribution<int> sector(0, p.sector_codes - 1);
    std::uniform_int_distribution<int> cortege_size(1, p.max_cortege);
    std::uniform_int_distribution<int> year(p.year_min, p.year_max);

    std::vector<OhpRecord> out;
    for (int i = 0; i < p.record_count; ++i) {
        OhpRecord rec;
        rec.record_id = "R" + std::to_string(i);
        rec.year = year(rng);
        rec.disease = make_code(Axis::Disease, disease(rng));
        int want = cortege_size(rng);
        for (int attempt = 0; attempt < 20 && static_cast<int>(rec.exposures.size()) < want;
             ++attempt) {
            Code c = make_code(Axis::Exposure, exposure(rng));
            if (std::find(rec.exposures.begin(), rec.exposures.end(), c) ==
                rec.exposures.end())
                rec.exposures.push_back(c);
        }
        std::sort(rec.exposures.begin(), rec.exposures.end());
        rec.occupation = make_code(Axis::Occupation, occupation(rng));
        rec.sector = make_code(Axis::Sector, sector(rng));
        out.push_back(std::move(rec));
    }
    return out;
}

// Zipf-popular exposure codes drawn from a fixed pool of distinct corteges,
// so large record sets dedupe into realistic weighted nodes.
struct ZipfParams {
    int record_count = 100000;
    int exposure_codes = 1500;
    int node_pool = 3000;
    int disease_codes = 200;
    double zipf_s = 1.0;
};

inline std::vector<OhpRecord> zipf_records(std::uint64_t seed, const ZipfParams &p = {}) {
    std::mt19937_64 rng(seed);

    std::vector<double> weights(static_cast<std::size_t>(p.exposure_codes));
    for (int i = 0; i < p.exposure_codes; ++i)
        weights[static_cast<std::size_t>(i)] = 1.0 / std::pow(i + 1, p.zipf_s);
    std::discrete_distribution<int> exposure(weights.begin(), weights.end());
    std::uniform_int_distribution<int> disease(0, p.disease_codes - 1);
    std::uniform_int_distribution<int> cortege_size(1, 5);
    std::uniform_int_distribution<int> year(2002, 2007);

    struct Template {
        Code disease;
        std::vector<Code> exposures;
    };
    std::vector<Template> pool;
    for (int i = 0; i < p.node_pool; ++i) {
        Template t;
        t.disease = make_code(Axis::Disease, disease(rng));
        int want = cortege_size(rng);
        for (int attempt = 0; attempt < 30 && static_cast<int>(t.exposures.size()) < want;
             ++attempt) {
            Code c = make_code(Axis::Exposure, exposure(rng));
            if (std::find(t.exposures.begin(), t.exposures.end(), c) == t.exposures.end())
                t.exposures.push_back(c);
        }
        std::sort(t.exposures.begin(), t.exposures.end());
        pool.push_back(std::move(t));
    }

    std::uniform_int_distribution<int> pick(0, p.node_pool - 1);
    std::uniform_int_distribution<int> occupation(0, 49);
    std::uniform_int_distribution<int> sector(0, 19);
    std::vector<OhpRecord> out;
    out.reserve(static_cast<std::size_t>(p.record_count));
    for (int i = 0; i < p.record_count; ++i) {
        const Template &t = pool[static_cast<std::size_t>(pick(rng))];
        OhpRecord rec;
        rec.record_id = "Z" + std::to_string(i);
        rec.year = year(rng);
        rec.disease = t.disease;
        rec.exposures = t.exposures;
        rec.occupation = make_code(Axis::Occupation, occupation(rng));
        rec.sector = make_code(Axis::Sector, sector(rng));
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace exposome::synthetic

#endif
