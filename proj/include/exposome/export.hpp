#ifndef EXPOSOME_EXPORT_HPP
#define EXPOSOME_EXPORT_HPP

#include "exposome/cluster.hpp"
#include "exposome/graph.hpp"
#include "exposome/groups.hpp"
#include "exposome/metrics.hpp"
#include "exposome/temporal.hpp"

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace exposome {

inline constexpr const char *kToolVersion = "0.1.0";

/// Everything needed to reproduce a run: inputs with content digests plus the
/// parameters. Embedded in every emitted artifact.
struct RunManifest {
    struct Input {
        std::string path;
        std::string digest;
    };
    std::vector<Input> inputs;
    int min_shared = 1;
    int min_weight = 1;
    KeyMode key_mode = KeyMode::Cortege;
    std::optional<int> agg_exposure;
    std::string tool_version = kToolVersion;
    std::string timestamp; // UTC; honours SOURCE_DATE_EPOCH for reproducible output
};

namespace detail {

inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << h;
    return out.str();
}

inline std::string utc_timestamp() {
    std::time_t t;
    if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::atoll(epoch));
    else
        t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string join_codes(const std::vector<Code> &codes, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i)
            out += sep;
        out += codes[i].raw;
    }
    return out;
}

template <typename K> std::string join_histogram(const std::map<K, int> &hist) {
    std::ostringstream out;
    bool first = true;
    for (const auto &[k, n] : hist) {
        if (!first)
            out << ';';
        first = false;
        if constexpr (std::is_same_v<K, Code>)
            out << k.raw;
        else
            out << k;
        out << ':' << n;
    }
    return out.str();
}

} // namespace detail

inline std::string digest_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailureError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return detail::fnv1a_hex(buf.str());
}

inline RunManifest make_manifest(const std::vector<std::string> &input_paths,
                                 ExposomeParams params, KeyMode mode,
                                 std::optional<int> agg_exposure = std::nullopt) {
    RunManifest m;
    for (const auto &p : input_paths)
        m.inputs.push_back({p, digest_file(p)});
    m.min_shared = params.min_shared;
    m.min_weight = params.min_weight;
    m.key_mode = mode;
    m.agg_exposure = agg_exposure;
    m.timestamp = detail::utc_timestamp();
    return m;
}

inline std::string manifest_lines(const RunManifest &m, const std::string &prefix) {
    std::ostringstream out;
    out << prefix << "manifest tool_version=" << m.tool_version << " timestamp=" << m.timestamp
        << '\n';
    out << prefix << "manifest D=" << m.min_shared << " eta=" << m.min_weight
        << " key_mode=" << key_mode_name(m.key_mode);
    if (m.agg_exposure)
        out << " agg_exposure=" << *m.agg_exposure;
    out << '\n';
    for (const auto &in : m.inputs)
        out << prefix << "manifest input " << in.path << " fnv1a=" << in.digest << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// GraphML

inline void export_graphml(const Exposome &g, std::ostream &out,
                           const RunManifest *manifest = nullptr) {
    using detail::xml_escape;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    if (manifest) {
        out << "<!--\n" << manifest_lines(*manifest, "  ") << "-->\n";
    }
    out << "  <key id=\"disease\" for=\"node\" attr.name=\"disease\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"node\" attr.name=\"weight\" attr.type=\"int\"/>\n"
        << "  <key id=\"cortege\" for=\"node\" attr.name=\"cortege\" attr.type=\"string\"/>\n"
        << "  <key id=\"years\" for=\"node\" attr.name=\"years\" attr.type=\"string\"/>\n"
        << "  <key id=\"occupations\" for=\"node\" attr.name=\"occupations\" attr.type=\"string\"/>\n"
        << "  <key id=\"sectors\" for=\"node\" attr.name=\"sectors\" attr.type=\"string\"/>\n"
        << "  <key id=\"shared\" for=\"edge\" attr.name=\"shared\" attr.type=\"string\"/>\n"
        << "  <key id=\"strength\" for=\"edge\" attr.name=\"strength\" attr.type=\"int\"/>\n"
        << "  <key id=\"D\" for=\"graph\" attr.name=\"D\" attr.type=\"int\"/>\n"
        << "  <key id=\"eta\" for=\"graph\" attr.name=\"eta\" attr.type=\"int\"/>\n";
    out << "  <graph id=\"exposome\" edgedefault=\"undirected\">\n";
    out << "    <data key=\"D\">" << g.params.min_shared << "</data>\n";
    out << "    <data key=\"eta\">" << g.params.min_weight << "</data>\n";
    for (const auto &n : g.nodes) {
        out << "    <node id=\"n" << n.id << "\">\n";
        out << "      <data key=\"disease\">" << xml_escape(n.key.disease.raw) << "</data>\n";
        out << "      <data key=\"weight\">" << n.weight << "</data>\n";
        out << "      <data key=\"cortege\">" << xml_escape(detail::join_codes(n.key.exposures))
            << "</data>\n";
        out << "      <data key=\"years\">" << xml_escape(detail::join_histogram(n.years))
            << "</data>\n";
        out << "      <data key=\"occupations\">"
            << xml_escape(detail::join_histogram(n.occupations)) << "</data>\n";
        out << "      <data key=\"sectors\">" << xml_escape(detail::join_histogram(n.sectors))
            << "</data>\n";
        out << "    </node>\n";
    }
    for (const auto &e : g.edges) {
        out << "    <edge source=\"n" << e.a << "\" target=\"n" << e.b << "\">\n";
        out << "      <data key=\"shared\">" << xml_escape(detail::join_codes(e.shared))
            << "</data>\n";
        out << "      <data key=\"strength\">" << e.strength() << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

namespace detail {

inline std::string xml_unescape(std::string s) {
    auto replace_all = [&](std::string_view from, std::string_view to) {
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("&lt;", "<");
    replace_all("&gt;", ">");
    replace_all("&quot;", "\"");
    replace_all("&amp;", "&");
    return s;
}

inline std::vector<std::string> split_on(const std::string &s, char sep) {
    std::vector<std::string> out;
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(pos == std::string::npos ? s.substr(start) : s.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline std::string attr_value(const std::string &tag, const std::string &name) {
    auto pos = tag.find(name + "=\"");
    if (pos == std::string::npos)
        return {};
    pos += name.size() + 2;
    return tag.substr(pos, tag.find('"', pos) - pos);
}

} // namespace detail

/// Reads back the GraphML this library emits (not a general XML parser).
/// Code strings are re-parsed with the given separators.
inline Exposome import_graphml(std::istream &in, char exposure_sep = '.', char code_sep = '.') {
    Exposome g;
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());

    auto data_value = [&](const std::string &block, const std::string &key) {
        std::string open = "<data key=\"" + key + "\">";
        auto pos = block.find(open);
        if (pos == std::string::npos)
            return std::string();
        pos += open.size();
        return detail::xml_unescape(block.substr(pos, block.find("</data>", pos) - pos));
    };
    auto parse_hist_codes = [&](const std::string &text, Axis axis, std::map<Code, int> &out) {
        for (const auto &item : detail::split_on(text, ';')) {
            auto colon = item.rfind(':');
            out[parse_code(axis, item.substr(0, colon), code_sep)] =
                std::stoi(item.substr(colon + 1));
        }
    };

    auto graph_d = content.find("<graph ");
    if (graph_d != std::string::npos) {
        std::string head = content.substr(graph_d, content.find("<node", graph_d) - graph_d);
        if (auto v = data_value(head, "D"); !v.empty())
            g.params.min_shared = std::stoi(v);
        if (auto v = data_value(head, "eta"); !v.empty())
            g.params.min_weight = std::stoi(v);
    }

    std::size_t pos = 0;
    while ((pos = content.find("<node ", pos)) != std::string::npos) {
        auto end = content.find("</node>", pos);
        std::string block = content.substr(pos, end - pos);
        Node n;
        n.id = std::stoi(detail::attr_value(block, "id").substr(1));
        n.key.disease = parse_code(Axis::Disease, data_value(block, "disease"), code_sep);
        for (const auto &c : detail::split_on(data_value(block, "cortege"), ';'))
            n.key.exposures.push_back(parse_code(Axis::Exposure, c, exposure_sep));
        std::sort(n.key.exposures.begin(), n.key.exposures.end());
        n.weight = std::stoi(data_value(block, "weight"));
        for (const auto &item : detail::split_on(data_value(block, "years"), ';')) {
            auto colon = item.rfind(':');
            n.years[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
        }
        parse_hist_codes(data_value(block, "occupations"), Axis::Occupation, n.occupations);
        parse_hist_codes(data_value(block, "sectors"), Axis::Sector, n.sectors);
        g.nodes.push_back(std::move(n));
        pos = end;
    }

    pos = 0;
    while ((pos = content.find("<edge ", pos)) != std::string::npos) {
        auto end = content.find("</edge>", pos);
        std::string block = content.substr(pos, end - pos);
        Edge e;
        e.a = std::stoi(detail::attr_value(block, "source").substr(1));
        e.b = std::stoi(detail::attr_value(block, "target").substr(1));
        for (const auto &c : detail::split_on(data_value(block, "shared"), ';'))
            e.shared.push_back(parse_code(Axis::Exposure, c, exposure_sep));
        std::sort(e.shared.begin(), e.shared.end());
        g.edges.push_back(std::move(e));
        pos = end;
    }
    return g;
}

// ---------------------------------------------------------------------------
// DOT

/// DOT rendering data: node size is proportional to weight; overlay-selected
/// codes get distinct shape markers in the order given (square, circle, ...).
inline void export_dot(const Exposome &g, std::ostream &out,
                       const ProjectionOverlay *overlay = nullptr,
                       const RunManifest *manifest = nullptr) {
    static constexpr const char *kShapes[] = {"square", "circle", "diamond", "triangle",
                                              "pentagon"};
    out << "graph exposome {\n";
    if (manifest)
        out << manifest_lines(*manifest, "  // ");
    out << "  node [shape=ellipse];\n";
    constexpr double kBaseSize = 0.25;
    for (const auto &n : g.nodes) {
        out << "  n" << n.id << " [label=\"" << n.key.disease.raw << " x "
            << detail::join_codes(n.key.exposures, '+') << " (" << n.weight << ")\""
            << " width=" << std::fixed << std::setprecision(2) << kBaseSize * n.weight;
        if (overlay) {
            auto it = overlay->per_node.find(n.id);
            if (it != overlay->per_node.end()) {
                for (std::size_t c = 0; c < overlay->codes.size(); ++c) {
                    if (it->second.count(overlay->codes[c])) {
                        out << " shape="
                            << kShapes[c % (sizeof kShapes / sizeof *kShapes)]
                            << " style=filled fillcolor=black fontcolor=white";
                        break;
                    }
                }
            }
        }
        out << "];\n";
    }
    for (const auto &e : g.edges)
        out << "  n" << e.a << " -- n" << e.b << " [label=\""
            << detail::join_codes(e.shared, ';') << "\"];\n";
    out << "}\n";
}

// ---------------------------------------------------------------------------
// Report

struct CoverageRow {
    Axis axis = Axis::Disease;
    long long used = 0;
    long long available = 0;
};

/// The structured-text run report: graph summary, metrics, group and clique
/// tables, unshared exposures, coverage, and the manifest.
inline void write_report(std::ostream &out, const Exposome &g, const DegreeProfile &deg,
                         const ClusteringProfile &clus, const GroupsResult &groups,
                         const CliquesResult &cliques, const std::vector<CoverageRow> &coverage_rows,
                         const RunManifest &manifest) {
    out << "# exposome report\n\n";
    out << "[graph]\n";
    out << "W=" << g.total_ohp() << " V=" << g.node_count() << " L=" << g.edge_count()
        << " D=" << g.params.min_shared << " eta=" << g.params.min_weight << '\n';
    out << "density=" << std::fixed << std::setprecision(2) << density(g) << '\n';

    out << "\n[degree-histogram]\n";
    for (const auto &[k, count] : deg.histogram)
        out << "k=" << k << " nodes=" << count << '\n';

    out << "\n[clustering]\n";
    double sum = 0.0;
    for (double c : clus.per_node)
        sum += c;
    out << "mean_c=" << std::setprecision(4)
        << (clus.per_node.empty() ? 0.0 : sum / static_cast<double>(clus.per_node.size()))
        << '\n';

    out << "\n[exposure-groups]\n";
    for (const auto &grp : groups.groups)
        out << grp.exposure.raw << " members=" << grp.members.size() << " (" << grp.ohp_count
            << ")\n";
    out << "\n[unshared-exposures]\n";
    for (const auto &c : groups.unshared)
        out << c.raw << '\n';

    out << "\n[cliques]\n";
    if (cliques.truncated)
        out << "truncated=true\n";
    for (const auto &c : cliques.cliques) {
        out << (c.kind == CliqueKind::Single ? "single" : "hybrid") << " size="
            << c.members.size() << " members=";
        for (std::size_t i = 0; i < c.members.size(); ++i)
            out << (i ? "," : "") << c.members[i];
        if (c.kind == CliqueKind::Single)
            out << " common=" << detail::join_codes(c.common);
        out << '\n';
    }

    out << "\n[coverage]\n";
    for (const auto &row : coverage_rows)
        out << axis_name(row.axis) << " used=" << row.used << " available=" << row.available
            << " percent=" << std::setprecision(2) << coverage(row.used, row.available) << '\n';

    out << "\n[manifest]\n" << manifest_lines(manifest, "");
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoFailureError("cannot write " + path);
    out << content;
    if (!out)
        throw IoFailureError("write failed for " + path);
}

} // namespace exposome

#endif
