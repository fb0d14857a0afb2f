#ifndef EXPOSOME_INGEST_HPP
#define EXPOSOME_INGEST_HPP

#include "exposome/codes.hpp"
#include "exposome/errors.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace exposome {

/// One raw observation: a disease, its cortege of 1..5 distinct exposures, the
/// occupation and activity sector, and the observation year.
struct OhpRecord {
    std::string record_id;
    int year = 0;
    Code disease;
    std::vector<Code> exposures; // sorted, distinct
    Code occupation;
    Code sector;
};

struct RejectedRow {
    int row = 0; // 1-based data row number (header not counted)
    std::string reason;
};

enum class KeyMode { Cortege, Strict };

inline std::string_view key_mode_name(KeyMode m) {
    return m == KeyMode::Cortege ? "cortege" : "strict";
}

/// Node identity. Cortege mode keys on (disease, exposure set); Strict mode
/// additionally on (occupation, sector).
struct NodeKey {
    Code disease;
    std::vector<Code> exposures; // sorted
    std::optional<std::pair<Code, Code>> strict_extra;

    friend bool operator==(const NodeKey &, const NodeKey &) = default;
    friend std::strong_ordering operator<=>(const NodeKey &a, const NodeKey &b) {
        if (auto c = a.disease <=> b.disease; c != 0)
            return c;
        if (auto c = a.exposures <=> b.exposures; c != 0)
            return c;
        if (auto c = a.strict_extra.has_value() <=> b.strict_extra.has_value(); c != 0)
            return c;
        if (a.strict_extra)
            return *a.strict_extra <=> *b.strict_extra;
        return std::strong_ordering::equal;
    }

    std::string label() const {
        std::string s = disease.raw;
        for (const auto &e : exposures) {
            s += " x ";
            s += e.raw;
        }
        if (strict_extra) {
            s += " @ " + strict_extra->first.raw + "/" + strict_extra->second.raw;
        }
        return s;
    }
};

/// A deduplicated OHP. Weight counts identical records; the attribute multisets
/// keep the years/occupations/sectors of every constituent record so that
/// projections never need the raw file again.
struct Node {
    int id = 0;
    NodeKey key;
    int weight = 0;
    std::map<int, int> years;
    std::map<Code, int> occupations;
    std::map<Code, int> sectors;
};

struct ParseOptions {
    char disease_sep = '.';
    char exposure_sep = '.';
    char occupation_sep = '.';
    char sector_sep = '.';
    std::optional<int> agg_disease;
    std::optional<int> agg_exposure;
    std::optional<int> agg_occupation;
    std::optional<int> agg_sector;
    int year_min = 1990;
    int year_max = 2100;

    static ParseOptions from_tables(const std::map<Axis, ClassificationTable> &tables) {
        ParseOptions opt;
        auto sep = [&](Axis a, char dflt) {
            auto it = tables.find(a);
            return it == tables.end() ? dflt : it->second.separator;
        };
        opt.disease_sep = sep(Axis::Disease, '.');
        opt.exposure_sep = sep(Axis::Exposure, '.');
        opt.occupation_sep = sep(Axis::Occupation, '.');
        opt.sector_sep = sep(Axis::Sector, '.');
        return opt;
    }
};

struct ParseResult {
    std::vector<OhpRecord> accepted;
    std::vector<RejectedRow> rejected;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        fields.push_back(pos == std::string::npos ? line.substr(start)
                                                  : line.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return fields;
}

inline constexpr int kMaxExposures = 5;

// Builds one record from named fields; throws Error subtypes on bad rows.
inline OhpRecord make_record(const std::string &record_id, const std::string &year_text,
                             const std::vector<std::string> &exposure_texts,
                             const std::string &disease_text, const std::string &occupation_text,
                             const std::string &sector_text, const ParseOptions &opt) {
    OhpRecord rec;
    rec.record_id = trim(record_id);
    if (rec.record_id.empty())
        throw Error("MissingField", "record_id");
    std::string yt = trim(year_text);
    if (yt.empty())
        throw Error("MissingField", "year");
    try {
        std::size_t used = 0;
        rec.year = std::stoi(yt, &used);
        if (used != yt.size())
            throw std::invalid_argument(yt);
    } catch (const std::exception &) {
        throw Error("BadYear", "unparsable year '" + yt + "'");
    }
    if (rec.year < opt.year_min || rec.year > opt.year_max)
        throw Error("BadYear", "year " + yt + " outside accepted range");

    auto parse_axis = [](Axis axis, const std::string &text, char sep,
                         std::optional<int> level) {
        Code c;
        try {
            c = parse_code(axis, text, sep);
        } catch (const Error &e) {
            throw Error("BadCode", std::string(axis_name(axis)) + " '" + trim(text) +
                                       "': " + e.what());
        }
        return level ? aggregate(c, *level) : c;
    };

    if (trim(disease_text).empty())
        throw Error("MissingField", "disease");
    rec.disease = parse_axis(Axis::Disease, disease_text, opt.disease_sep, opt.agg_disease);

    for (const auto &text : exposure_texts) {
        if (trim(text).empty())
            continue;
        Code c = parse_axis(Axis::Exposure, text, opt.exposure_sep, opt.agg_exposure);
        if (std::find(rec.exposures.begin(), rec.exposures.end(), c) == rec.exposures.end())
            rec.exposures.push_back(c);
    }
    if (rec.exposures.empty())
        throw Error("MissingField", "at least one exposure required");
    if (rec.exposures.size() > static_cast<std::size_t>(kMaxExposures))
        throw Error("TooManyExposures",
                    std::to_string(rec.exposures.size()) + " distinct exposures, max 5");
    std::sort(rec.exposures.begin(), rec.exposures.end());

    if (trim(occupation_text).empty())
        throw Error("MissingField", "occupation");
    rec.occupation =
        parse_axis(Axis::Occupation, occupation_text, opt.occupation_sep, opt.agg_occupation);
    if (trim(sector_text).empty())
        throw Error("MissingField", "sector");
    rec.sector = parse_axis(Axis::Sector, sector_text, opt.sector_sep, opt.agg_sector);
    return rec;
}

} // namespace detail

/// Parses the comma-separated record format. Bad rows are collected with their
/// row number and reason, never thrown. Accepted + rejected covers every row.
inline ParseResult parse_records_csv(std::istream &in, const ParseOptions &opt = {}) {
    ParseResult result;
    std::string line;
    if (!std::getline(in, line))
        return result; // empty file, nothing to do

    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty())
            continue;
        auto f = detail::split_csv(line);
        f.resize(10);
        try {
            result.accepted.push_back(detail::make_record(
                f[0], f[1], {f.begin() + 3, f.begin() + 8}, f[2], f[8], f[9], opt));
        } catch (const Error &e) {
            result.rejected.push_back({row, e.code()});
        }
    }
    return result;
}

/// Line-delimited JSON alternative with the same field names; `exposures` is an
/// array of 1..5 code strings.
inline ParseResult parse_records_jsonl(std::istream &in, const ParseOptions &opt = {}) {
    ParseResult result;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty())
            continue;
        try {
            auto j = nlohmann::json::parse(line);
            std::vector<std::string> exposures;
            if (j.contains("exposures"))
                for (const auto &e : j["exposures"])
                    exposures.push_back(e.get<std::string>());
            std::string year = j.contains("year")
                                   ? (j["year"].is_number()
                                          ? std::to_string(j["year"].get<long long>())
                                          : j["year"].get<std::string>())
                                   : "";
            result.accepted.push_back(detail::make_record(
                j.value("record_id", ""), year, exposures, j.value("disease", ""),
                j.value("occupation", ""), j.value("sector", ""), opt));
        } catch (const Error &e) {
            result.rejected.push_back({row, e.code()});
        } catch (const nlohmann::json::exception &) {
            result.rejected.push_back({row, "BadRow"});
        }
    }
    return result;
}

/// Dispatches on content: rows starting with '{' are treated as JSON lines.
inline ParseResult parse_records(std::istream &in, const ParseOptions &opt = {}) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    auto first = content.find_first_not_of(" \t\r\n");
    std::istringstream replay(content);
    if (first != std::string::npos && content[first] == '{')
        return parse_records_jsonl(replay, opt);
    return parse_records_csv(replay, opt);
}

inline NodeKey node_key(const OhpRecord &rec, KeyMode mode) {
    NodeKey key;
    key.disease = rec.disease;
    key.exposures = rec.exposures; // already sorted at parse time
    if (mode == KeyMode::Strict)
        key.strict_extra = std::make_pair(rec.occupation, rec.sector);
    return key;
}

/// Collapses records into weighted nodes. Ids are dense, in first-appearance
/// order of the key. Total weight always equals the record count.
inline std::vector<Node> dedupe(const std::vector<OhpRecord> &records, KeyMode mode) {
    std::vector<Node> nodes;
    std::map<NodeKey, int> index;
    for (const auto &rec : records) {
        NodeKey key = node_key(rec, mode);
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(nodes.size()));
        if (fresh) {
            Node n;
            n.id = it->second;
            n.key = std::move(key);
            nodes.push_back(std::move(n));
        }
        Node &n = nodes[static_cast<std::size_t>(it->second)];
        n.weight += 1;
        n.years[rec.year] += 1;
        n.occupations[rec.occupation] += 1;
        n.sectors[rec.sector] += 1;
    }
    return nodes;
}

/// Writes the `row,reason` sidecar next to a rejected-row list.
inline void write_rejects(std::ostream &out, const std::vector<RejectedRow> &rejected) {
    out << "row,reason\n";
    for (const auto &r : rejected)
        out << r.row << ',' << r.reason << '\n';
}

} // namespace exposome

#endif
