#ifndef EXPOSOME_GRAPH_HPP
#define EXPOSOME_GRAPH_HPP

#include "exposome/errors.hpp"
#include "exposome/ingest.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace exposome {

/// D: minimum number of shared exposures per link. eta: minimum node weight.
struct ExposomeParams {
    int min_shared = 1; // D
    int min_weight = 1; // eta
};

/// An undirected link between two nodes, annotated with the exact exposures
/// they share. strength == |shared|.
struct Edge {
    int a = 0; // indices into Exposome::nodes, a < b
    int b = 0;
    std::vector<Code> shared;

    int strength() const { return static_cast<int>(shared.size()); }
};

/// The D_eta-exposome G = {W, V, L, D, eta}. Nodes below the weight threshold
/// are dropped entirely; W and V count survivors only.
struct Exposome {
    ExposomeParams params;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    long long total_ohp() const { // W
        long long w = 0;
        for (const auto &n : nodes)
            w += n.weight;
        return w;
    }
    int node_count() const { return static_cast<int>(nodes.size()); } // V
    long long edge_count() const { return static_cast<long long>(edges.size()); } // L

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(nodes.size());
        for (const auto &e : edges) {
            adj[static_cast<std::size_t>(e.a)].push_back(e.b);
            adj[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        for (auto &row : adj)
            std::sort(row.begin(), row.end());
        return adj;
    }
};

/// C_ij,eta: size of the cortege intersection, gated to zero unless both node
/// weights reach the threshold (the gate is inclusive, w >= eta).
inline int connection_strength(const std::vector<Code> &cortege_i,
                               const std::vector<Code> &cortege_j, int weight_i, int weight_j,
                               int eta) {
    if (weight_i < eta || weight_j < eta)
        return 0;
    int common = 0;
    for (const auto &c : cortege_i)
        if (std::find(cortege_j.begin(), cortege_j.end(), c) != cortege_j.end())
            ++common;
    return common;
}

namespace detail {

inline std::vector<Code> shared_exposures(const std::vector<Code> &a,
                                          const std::vector<Code> &b) {
    std::vector<Code> out; // both corteges sorted since parse time
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace detail

/// Builds the exposome with an inverted exposure->nodes index, so the work is
/// proportional to the sum of squared bucket sizes instead of V^2 pair checks.
/// Codes are interned to dense ints for the duration of the build; the
/// per-candidate counter array makes each co-occurrence a single increment.
inline Exposome build(const std::vector<Node> &nodes, ExposomeParams params = {}) {
    Exposome g;
    g.params = params;

    for (const auto &n : nodes)
        if (n.weight >= params.min_weight)
            g.nodes.push_back(n);
    const int v = static_cast<int>(g.nodes.size());
    for (int i = 0; i < v; ++i)
        g.nodes[static_cast<std::size_t>(i)].id = i;

    // Intern exposure codes; vocab maps ids back to Codes for edge witnesses.
    std::map<Code, int> code_ids;
    std::vector<const Code *> vocab;
    std::vector<std::vector<int>> corteges(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) {
        for (const auto &c : g.nodes[static_cast<std::size_t>(i)].key.exposures) {
            auto [it, fresh] = code_ids.try_emplace(c, static_cast<int>(vocab.size()));
            if (fresh)
                vocab.push_back(&it->first);
            corteges[static_cast<std::size_t>(i)].push_back(it->second);
        }
        std::sort(corteges[static_cast<std::size_t>(i)].begin(),
                  corteges[static_cast<std::size_t>(i)].end());
    }

    // Nodes are scanned in id order; buckets hold lower-id carriers only, so
    // every candidate pair (j, i) with j < i is counted exactly once per
    // shared code. Duplicate-free corteges make the count the intersection
    // size, i.e. C_ij at the already-applied weight gate.
    std::vector<std::vector<int>> buckets(vocab.size());
    std::vector<int> counts(static_cast<std::size_t>(v), 0);
    std::vector<int> touched;
    for (int i = 0; i < v; ++i) {
        touched.clear();
        for (int c : corteges[static_cast<std::size_t>(i)])
            for (int j : buckets[static_cast<std::size_t>(c)]) {
                if (counts[static_cast<std::size_t>(j)] == 0)
                    touched.push_back(j);
                ++counts[static_cast<std::size_t>(j)];
            }
        for (int j : touched) {
            if (counts[static_cast<std::size_t>(j)] >= params.min_shared) {
                Edge e;
                e.a = j;
                e.b = i;
                std::vector<int> witness;
                std::set_intersection(corteges[static_cast<std::size_t>(j)].begin(),
                                      corteges[static_cast<std::size_t>(j)].end(),
                                      corteges[static_cast<std::size_t>(i)].begin(),
                                      corteges[static_cast<std::size_t>(i)].end(),
                                      std::back_inserter(witness));
                for (int w : witness)
                    e.shared.push_back(*vocab[static_cast<std::size_t>(w)]);
                std::sort(e.shared.begin(), e.shared.end());
                g.edges.push_back(std::move(e));
            }
            counts[static_cast<std::size_t>(j)] = 0;
        }
        for (int c : corteges[static_cast<std::size_t>(i)])
            buckets[static_cast<std::size_t>(c)].push_back(i);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge &x, const Edge &y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return g;
}

/// Tightens an already-built exposome to stricter parameters without touching
/// the inverted index again. Loosening needs a rebuild from the node list.
inline Exposome rebuild(const Exposome &g, ExposomeParams params) {
    if (params.min_shared < g.params.min_shared || params.min_weight < g.params.min_weight)
        throw ParamLoosenedError("new params are looser than the built graph's");

    Exposome out;
    out.params = params;
    std::vector<int> remap(g.nodes.size(), -1);
    for (const auto &n : g.nodes)
        if (n.weight >= params.min_weight) {
            remap[static_cast<std::size_t>(n.id)] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(n);
        }
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
        out.nodes[i].id = static_cast<int>(i);

    for (const auto &e : g.edges) {
        if (e.strength() < params.min_shared)
            continue;
        int a = remap[static_cast<std::size_t>(e.a)];
        int b = remap[static_cast<std::size_t>(e.b)];
        if (a < 0 || b < 0)
            continue;
        Edge copy = e;
        copy.a = std::min(a, b);
        copy.b = std::max(a, b);
        out.edges.push_back(std::move(copy));
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Edge &x, const Edge &y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return out;
}

} // namespace exposome

#endif
