#ifndef EXPOSOME_CLUSTER_HPP
#define EXPOSOME_CLUSTER_HPP

#include "exposome/groups.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace exposome {

/// Jaccard distance between two exposure groups' member node sets.
inline double group_distance(const ExposureGroup &a, const ExposureGroup &b) {
    auto inter = detail::intersect_sorted(a.members, b.members).size();
    auto uni = a.members.size() + b.members.size() - inter;
    if (uni == 0)
        return 0.0;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

/// Binary merge tree over exposure groups. Tree nodes are indexed leaves
/// first (0..n-1), then merges (n..2n-2) in creation order.
struct Dendrogram {
    struct Leaf {
        std::string label;
        long long ohp_count = 0;
    };
    struct Merge {
        int left = 0;
        int right = 0;
        double height = 0.0;
    };
    std::vector<Leaf> leaves;
    std::vector<Merge> merges;

    int root() const {
        return merges.empty() ? 0 : static_cast<int>(leaves.size() + merges.size()) - 1;
    }
};

/// UPGMA (average linkage) over group_distance. Ties are broken towards the
/// pair whose (smaller, larger) cluster labels sort first, so the output does
/// not depend on input order.
inline Dendrogram upgma(const std::vector<ExposureGroup> &groups) {
    const int n = static_cast<int>(groups.size());
    Dendrogram tree;
    for (const auto &g : groups)
        tree.leaves.push_back({g.exposure.raw, g.ohp_count});
    if (n <= 1)
        return tree;

    struct Cluster {
        int node = 0;        // tree node index
        int size = 0;        // leaf count
        std::string label;   // lexicographically smallest member leaf label
    };
    std::vector<Cluster> active;
    for (int i = 0; i < n; ++i)
        active.push_back({i, 1, groups[static_cast<std::size_t>(i)].exposure.raw});

    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = group_distance(
                    groups[static_cast<std::size_t>(i)], groups[static_cast<std::size_t>(j)]);

    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        auto key = [&](std::size_t i, std::size_t j) {
            return std::minmax(active[i].label, active[j].label);
        };
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double d = dist[i][j];
                if (d < best || (d == best && key(i, j) < key(bi, bj))) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }

        Cluster merged;
        merged.node = n + static_cast<int>(tree.merges.size());
        merged.size = active[bi].size + active[bj].size;
        merged.label = std::min(active[bi].label, active[bj].label);
        // left child carries the smaller label
        bool bi_left = active[bi].label < active[bj].label;
        tree.merges.push_back({bi_left ? active[bi].node : active[bj].node,
                               bi_left ? active[bj].node : active[bi].node, best});

        // Weighted average keeps the distance an average over leaf pairs.
        std::vector<double> fresh(active.size(), 0.0);
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj)
                continue;
            fresh[k] = (active[bi].size * dist[bi][k] + active[bj].size * dist[bj][k]) /
                       static_cast<double>(merged.size);
        }

        // Replace bi with the merged cluster, drop bj.
        active[bi] = merged;
        for (std::size_t k = 0; k < active.size(); ++k)
            dist[bi][k] = dist[k][bi] = fresh[k];
        dist[bi][bi] = 0.0;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto &row : dist)
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return tree;
}

namespace detail {

inline void format_height(std::ostream &out, double h) {
    std::ostringstream s;
    s.precision(12);
    s << h;
    out << s.str();
}

inline double node_height(const Dendrogram &t, int node) {
    int n = static_cast<int>(t.leaves.size());
    return node < n ? 0.0 : t.merges[static_cast<std::size_t>(node - n)].height;
}

inline void write_newick_node(std::ostream &out, const Dendrogram &t, int node,
                              double parent_height) {
    int n = static_cast<int>(t.leaves.size());
    if (node < n) {
        std::string label = t.leaves[static_cast<std::size_t>(node)].label;
        for (char &c : label)
            if (c == ' ' || c == ',' || c == '(' || c == ')' || c == ':' || c == ';')
                c = '_';
        out << label;
    } else {
        const auto &m = t.merges[static_cast<std::size_t>(node - n)];
        out << '(';
        write_newick_node(out, t, m.left, m.height);
        out << ',';
        write_newick_node(out, t, m.right, m.height);
        out << ')';
    }
    out << ':';
    format_height(out, parent_height - node_height(t, node));
}

} // namespace detail

/// Newick with branch lengths equal to height deltas between merges.
inline std::string to_newick(const Dendrogram &t) {
    std::ostringstream out;
    if (t.leaves.empty()) {
        out << ";";
        return out.str();
    }
    detail::write_newick_node(out, t, t.root(), detail::node_height(t, t.root()));
    out << ';';
    return out.str();
}

/// Plain tree dump: one line per merge with height, plus the leaf table.
inline std::string dump_tree(const Dendrogram &t) {
    std::ostringstream out;
    out << "leaves " << t.leaves.size() << '\n';
    for (std::size_t i = 0; i < t.leaves.size(); ++i)
        out << "  leaf " << i << ' ' << t.leaves[i].label << " (" << t.leaves[i].ohp_count
            << ")\n";
    int n = static_cast<int>(t.leaves.size());
    for (std::size_t i = 0; i < t.merges.size(); ++i) {
        const auto &m = t.merges[i];
        out << "  merge " << (n + static_cast<int>(i)) << " = " << m.left << " + " << m.right
            << " @ ";
        detail::format_height(out, m.height);
        out << '\n';
    }
    return out.str();
}

} // namespace exposome

#endif
