#ifndef EXPOSOME_CODES_HPP
#define EXPOSOME_CODES_HPP

#include "exposome/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace exposome {

/// The four classification axes of an occupational health problem.
enum class Axis { Disease, Exposure, Occupation, Sector };

inline constexpr std::array<Axis, 4> all_axes{Axis::Disease, Axis::Exposure,
                                              Axis::Occupation, Axis::Sector};

inline std::string_view axis_name(Axis a) {
    switch (a) {
    case Axis::Disease:
        return "disease";
    case Axis::Exposure:
        return "exposure";
    case Axis::Occupation:
        return "occupation";
    case Axis::Sector:
        return "sector";
    }
    return "?";
}

inline Axis axis_from_name(std::string_view name) {
    for (Axis a : all_axes)
        if (axis_name(a) == name)
            return a;
    throw UnknownAxisError("no axis named '" + std::string(name) + "'");
}

/// Default code-space sizes per axis, used when a classification table does
/// not declare its own.
inline constexpr int default_declared_size(Axis a) {
    switch (a) {
    case Axis::Disease:
        return 1716;
    case Axis::Exposure:
        return 6722;
    case Axis::Occupation:
        return 390;
    case Axis::Sector:
        return 61;
    }
    return 1;
}

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

} // namespace detail

/// A hierarchical classification code: ordered segments, most-general first.
/// Canonical form is uppercased and trimmed; equality is axis + segments.
struct Code {
    Axis axis{Axis::Disease};
    std::vector<std::string> segments;
    std::string raw;

    int depth() const { return static_cast<int>(segments.size()); }

    friend bool operator==(const Code &a, const Code &b) {
        return a.axis == b.axis && a.segments == b.segments;
    }
    friend std::strong_ordering operator<=>(const Code &a, const Code &b) {
        if (auto c = a.axis <=> b.axis; c != 0)
            return c;
        return a.segments <=> b.segments;
    }
};

/// Splits `text` on `separator` into canonicalized segments.
/// Throws EmptyCode for blank input, EmptySegment for runs like "02..01".
inline Code parse_code(Axis axis, std::string_view text, char separator = '.') {
    std::string trimmed = detail::trim(text);
    if (trimmed.empty())
        throw EmptyCodeError("blank code for axis " + std::string(axis_name(axis)));

    Code code;
    code.axis = axis;
    std::string::size_type start = 0;
    while (true) {
        auto pos = trimmed.find(separator, start);
        std::string seg = detail::upper(detail::trim(
            std::string_view(trimmed).substr(start, pos == std::string::npos
                                                        ? std::string::npos
                                                        : pos - start)));
        if (seg.empty())
            throw EmptySegmentError("empty segment in '" + trimmed + "'");
        code.segments.push_back(std::move(seg));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }

    std::ostringstream joined;
    for (std::size_t i = 0; i < code.segments.size(); ++i) {
        if (i)
            joined << separator;
        joined << code.segments[i];
    }
    code.raw = joined.str();
    return code;
}

/// Truncates a code to its first `level` segments. Identity when the code is
/// already at or above the requested depth.
inline Code aggregate(const Code &code, int level) {
    if (level >= code.depth())
        return code;
    Code out;
    out.axis = code.axis;
    out.segments.assign(code.segments.begin(), code.segments.begin() + level);
    // Re-derive raw from the kept prefix of the original text. The separator is
    // whatever character follows the prefix in raw; fall back to '.'.
    std::size_t cut = 0;
    for (int i = 0; i < level; ++i)
        cut += out.segments[i].size();
    cut += static_cast<std::size_t>(level - 1);
    out.raw = code.raw.substr(0, std::min(cut, code.raw.size()));
    return out;
}

/// Percentage of the available code space actually used, in [0, 100].
inline double coverage(long long used_distinct, long long available) {
    if (available <= 0)
        throw CoverageDomainError("available code space must be positive");
    if (used_distinct < 0 || used_distinct > available)
        throw CoverageDomainError("used count outside [0, available]");
    return 100.0 * static_cast<double>(used_distinct) / static_cast<double>(available);
}

/// A pluggable classification table for one axis. The artifact never ships the
/// official ICD-10/CNAM/CITP/NAP tables; users supply their own.
struct ClassificationTable {
    Axis axis{Axis::Disease};
    char separator = '.';
    int declared_size = 1;
    std::map<Code, std::string> entries;
};

/// Reads one classification table. Format: header `axis,declared_size,separator`
/// followed by `code,label` rows. declared_size may be blank (per-axis default).
inline ClassificationTable load_classification_table(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw IoFailureError("empty classification table");

    auto split3 = [](const std::string &s) {
        std::array<std::string, 3> out;
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            auto pos = s.find(',', start);
            out[i] = detail::trim(pos == std::string::npos ? s.substr(start)
                                                           : s.substr(start, pos - start));
            if (pos == std::string::npos)
                break;
            start = pos + 1;
        }
        return out;
    };

    auto header = split3(line);
    ClassificationTable table;
    table.axis = axis_from_name(header[0]);
    table.declared_size = header[1].empty() ? default_declared_size(table.axis)
                                            : std::stoi(header[1]);
    if (table.declared_size <= 0)
        throw IoFailureError("declared_size must be positive");
    table.separator = header[2].empty() ? '.' : header[2][0];

    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty())
            continue;
        auto pos = line.find(',');
        std::string code_text = pos == std::string::npos ? line : line.substr(0, pos);
        std::string label = pos == std::string::npos ? "" : detail::trim(line.substr(pos + 1));
        table.entries.emplace(parse_code(table.axis, code_text, table.separator),
                              std::move(label));
    }
    if (static_cast<int>(table.entries.size()) > table.declared_size)
        throw IoFailureError("table lists more codes than its declared size");
    return table;
}

inline ClassificationTable load_classification_table(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoFailureError("cannot open " + path);
    return load_classification_table(in);
}

/// Distinct count after aggregating every code in `codes` to `level`.
inline std::size_t distinct_at_level(const std::vector<Code> &codes, int level) {
    std::set<Code> seen;
    for (const auto &c : codes)
        seen.insert(aggregate(c, level));
    return seen.size();
}

} // namespace exposome

#endif
