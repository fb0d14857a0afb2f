#ifndef EXPOSOME_METRICS_HPP
#define EXPOSOME_METRICS_HPP

#include "exposome/graph.hpp"

#include <map>
#include <vector>

namespace exposome {

struct DegreeProfile {
    std::vector<int> per_node;   // node index -> k
    std::map<int, int> histogram; // k -> node count
};

struct ClusteringProfile {
    std::vector<double> per_node; // node index -> c in [0, 1]
};

/// d = 2L / V(V-1). Zero by convention for graphs with fewer than two nodes.
inline double density(long long edge_count, int node_count) {
    if (node_count <= 1)
        return 0.0;
    return 2.0 * static_cast<double>(edge_count) /
           (static_cast<double>(node_count) * (node_count - 1));
}

inline double density(const Exposome &g) { return density(g.edge_count(), g.node_count()); }

inline DegreeProfile degrees(const Exposome &g) {
    DegreeProfile profile;
    profile.per_node.assign(g.nodes.size(), 0);
    for (const auto &e : g.edges) {
        ++profile.per_node[static_cast<std::size_t>(e.a)];
        ++profile.per_node[static_cast<std::size_t>(e.b)];
    }
    for (int k : profile.per_node)
        ++profile.histogram[k];
    return profile;
}

/// Watts-Strogatz local coefficient: fraction of a node's neighbour pairs that
/// are themselves adjacent. Degree 0 and 1 get c = 0, matching the singleton
/// convention.
inline ClusteringProfile clustering(const Exposome &g) {
    ClusteringProfile profile;
    profile.per_node.assign(g.nodes.size(), 0.0);
    auto adj = g.adjacency();
    for (std::size_t v = 0; v < adj.size(); ++v) {
        const auto &nbrs = adj[v];
        auto k = nbrs.size();
        if (k < 2)
            continue;
        long long linked = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const auto &ni = adj[static_cast<std::size_t>(nbrs[i])];
            for (std::size_t j = i + 1; j < k; ++j)
                if (std::binary_search(ni.begin(), ni.end(), nbrs[j]))
                    ++linked;
        }
        profile.per_node[v] =
            2.0 * static_cast<double>(linked) / (static_cast<double>(k) * (static_cast<double>(k) - 1));
    }
    return profile;
}

} // namespace exposome

#endif
