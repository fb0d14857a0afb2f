#ifndef EXPOSOME_TEMPORAL_HPP
#define EXPOSOME_TEMPORAL_HPP

#include "exposome/graph.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace exposome {

/// Snapshot comparison between two cumulative cutoffs. A key gaining weight is
/// either brand new at t2 or an increment of a node already seen at t1.
struct DiffReport {
    struct KeyDelta {
        NodeKey key;
        int weight_t1 = 0;
        int weight_t2 = 0;
        int delta() const { return weight_t2 - weight_t1; }
    };
    std::vector<KeyDelta> new_nodes;   // absent at t1
    std::vector<KeyDelta> incremented; // present at both, delta > 0
    std::vector<std::pair<NodeKey, NodeKey>> new_edges; // at t2, absent at t1
};

/// Per-node counts of constituent OHP matching selected occupation or sector
/// codes. Nodes with no match for any selected code are omitted.
struct ProjectionOverlay {
    Axis axis = Axis::Occupation;
    std::vector<Code> codes;
    std::map<int, std::map<Code, int>> per_node; // node index -> code -> count
};

inline DiffReport snapshot_diff(const std::vector<OhpRecord> &records, int cutoff_t1,
                                int cutoff_t2, KeyMode mode, ExposomeParams params = {}) {
    if (cutoff_t1 >= cutoff_t2)
        throw BadCutoffsError("t1 must precede t2");

    auto slice = [&](int cutoff) {
        std::vector<OhpRecord> out;
        for (const auto &r : records)
            if (r.year <= cutoff)
                out.push_back(r);
        return out;
    };
    auto g1 = build(dedupe(slice(cutoff_t1), mode), params);
    auto g2 = build(dedupe(slice(cutoff_t2), mode), params);

    std::map<NodeKey, int> w1, w2;
    for (const auto &n : g1.nodes)
        w1[n.key] = n.weight;
    for (const auto &n : g2.nodes)
        w2[n.key] = n.weight;

    DiffReport diff;
    for (const auto &[key, weight] : w2) {
        auto it = w1.find(key);
        if (it == w1.end())
            diff.new_nodes.push_back({key, 0, weight});
        else if (weight > it->second)
            diff.incremented.push_back({key, it->second, weight});
    }

    auto edge_keys = [](const Exposome &g) {
        std::vector<std::pair<NodeKey, NodeKey>> out;
        for (const auto &e : g.edges) {
            NodeKey ka = g.nodes[static_cast<std::size_t>(e.a)].key;
            NodeKey kb = g.nodes[static_cast<std::size_t>(e.b)].key;
            if (kb < ka)
                std::swap(ka, kb);
            out.push_back({std::move(ka), std::move(kb)});
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto e1 = edge_keys(g1);
    auto e2 = edge_keys(g2);
    std::set_difference(e2.begin(), e2.end(), e1.begin(), e1.end(),
                        std::back_inserter(diff.new_edges));
    return diff;
}

inline ProjectionOverlay project(const Exposome &g, Axis axis, const std::vector<Code> &codes) {
    if (axis != Axis::Occupation && axis != Axis::Sector)
        throw UnknownAxisError("projection is defined for occupation and sector only");

    ProjectionOverlay overlay;
    overlay.axis = axis;
    overlay.codes = codes;
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        const auto &attrs =
            axis == Axis::Occupation ? g.nodes[v].occupations : g.nodes[v].sectors;
        std::map<Code, int> hits;
        for (const auto &c : codes) {
            auto it = attrs.find(c);
            if (it != attrs.end())
                hits[c] = it->second;
        }
        if (!hits.empty())
            overlay.per_node[static_cast<int>(v)] = std::move(hits);
    }
    return overlay;
}

} // namespace exposome

#endif
