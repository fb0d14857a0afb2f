#ifndef EXPOSOME_GROUPS_HPP
#define EXPOSOME_GROUPS_HPP

#include "exposome/graph.hpp"
#include "exposome/metrics.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace exposome {

/// A single exposure group: the nodes whose corteges contain one exposure
/// code. At D=1 these always induce a clique.
struct ExposureGroup {
    Code exposure;
    std::vector<int> members; // node indices, ascending
    long long ohp_count = 0;  // sum of member weights
};

struct GroupsResult {
    std::vector<ExposureGroup> groups; // size >= 2, largest first
    std::vector<Code> unshared;        // exposures carried by exactly one node
};

enum class CliqueKind { Single, Hybrid };

struct CliqueFinding {
    std::vector<int> members; // ascending node indices
    CliqueKind kind = CliqueKind::Single;
    std::vector<Code> common; // Single: exposures shared by every member
    // Hybrid: per-edge witnesses, keyed by the member pair.
    std::vector<std::pair<std::pair<int, int>, std::vector<Code>>> edge_witnesses;
};

struct CliquesResult {
    std::vector<CliqueFinding> cliques;
    bool truncated = false; // OutputCapExceeded: cap hit, partial result
};

struct BridgeReport {
    int node = 0;
    std::vector<Code> group_memberships;
    int degree = 0;
    double clustering = 0.0;
};

struct GroupOverlap {
    // vertex g refers to groups[g] of the GroupsResult this was built from
    struct Link {
        int a = 0;
        int b = 0;
        int shared_nodes = 0;
    };
    int group_count = 0;
    std::vector<Link> links;
};

/// One group per exposure carried by at least two nodes; exposures carried by
/// exactly one node are reported as unshared. Sorted by size desc, then code.
inline GroupsResult exposure_groups(const Exposome &g) {
    std::map<Code, std::vector<int>> incidence;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (const auto &c : g.nodes[i].key.exposures)
            incidence[c].push_back(static_cast<int>(i));

    GroupsResult result;
    for (auto &[code, members] : incidence) {
        if (members.size() < 2) {
            result.unshared.push_back(code);
            continue;
        }
        ExposureGroup grp;
        grp.exposure = code;
        grp.members = members;
        for (int m : members)
            grp.ohp_count += g.nodes[static_cast<std::size_t>(m)].weight;
        result.groups.push_back(std::move(grp));
    }
    std::sort(result.groups.begin(), result.groups.end(),
              [](const ExposureGroup &a, const ExposureGroup &b) {
                  if (a.members.size() != b.members.size())
                      return a.members.size() > b.members.size();
                  return a.exposure < b.exposure;
              });
    return result;
}

namespace detail {

inline std::vector<int> intersect_sorted(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Bron-Kerbosch with pivoting. r, p, x are sorted node-index sets.
inline void bron_kerbosch(const std::vector<std::vector<int>> &adj, std::vector<int> &r,
                          std::vector<int> p, std::vector<int> x,
                          std::vector<std::vector<int>> &out) {
    if (p.empty() && x.empty()) {
        if (r.size() >= 2)
            out.push_back(r);
        return;
    }
    // pivot: vertex of p ∪ x with the most neighbours inside p
    int pivot = -1;
    std::size_t best = 0;
    for (const auto *set : {&p, &x})
        for (int u : *set) {
            auto n = intersect_sorted(adj[static_cast<std::size_t>(u)], p).size();
            if (pivot < 0 || n > best) {
                pivot = u;
                best = n;
            }
        }
    std::vector<int> candidates;
    const auto &pivot_nbrs = adj[static_cast<std::size_t>(pivot)];
    for (int v : p)
        if (!std::binary_search(pivot_nbrs.begin(), pivot_nbrs.end(), v))
            candidates.push_back(v);

    for (int v : candidates) {
        const auto &nbrs = adj[static_cast<std::size_t>(v)];
        r.push_back(v);
        bron_kerbosch(adj, r, intersect_sorted(p, nbrs), intersect_sorted(x, nbrs), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
}

} // namespace detail

/// Classifies a maximal clique by the n-way cortege intersection: Single when
/// at least one exposure is common to every member, Hybrid otherwise (held
/// together by pairwise-distinct witnesses).
inline CliqueFinding classify_clique(const Exposome &g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    CliqueFinding finding;
    finding.members = members;

    std::vector<Code> common = g.nodes[static_cast<std::size_t>(members[0])].key.exposures;
    for (std::size_t i = 1; i < members.size(); ++i)
        common = detail::shared_exposures(
            common, g.nodes[static_cast<std::size_t>(members[i])].key.exposures);

    if (!common.empty()) {
        finding.kind = CliqueKind::Single;
        finding.common = std::move(common);
    } else {
        finding.kind = CliqueKind::Hybrid;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                auto witness = detail::shared_exposures(
                    g.nodes[static_cast<std::size_t>(members[i])].key.exposures,
                    g.nodes[static_cast<std::size_t>(members[j])].key.exposures);
                finding.edge_witnesses.push_back(
                    {{members[i], members[j]}, std::move(witness)});
            }
    }
    return finding;
}

/// All maximal cliques of size >= 2, size-descending then lexicographic by
/// member ids. `max_output` caps the list; hitting it sets `truncated`.
inline CliquesResult maximal_cliques(const Exposome &g, std::size_t max_output = 100000) {
    auto adj = g.adjacency();
    std::vector<int> all(g.nodes.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = static_cast<int>(i);

    std::vector<std::vector<int>> raw;
    std::vector<int> r;
    detail::bron_kerbosch(adj, r, all, {}, raw);

    for (auto &c : raw)
        std::sort(c.begin(), c.end());
    std::sort(raw.begin(), raw.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    });

    CliquesResult result;
    for (auto &c : raw) {
        if (result.cliques.size() >= max_output) {
            result.truncated = true;
            break;
        }
        result.cliques.push_back(classify_clique(g, std::move(c)));
    }
    return result;
}

/// Nodes that junction two or more exposure groups, with their k and c.
/// Sorted by membership count descending, then node index.
inline std::vector<BridgeReport> bridging_nodes(const Exposome &g, const GroupsResult &groups,
                                                const DegreeProfile &deg,
                                                const ClusteringProfile &clus) {
    std::vector<std::vector<Code>> memberships(g.nodes.size());
    for (const auto &grp : groups.groups)
        for (int m : grp.members)
            memberships[static_cast<std::size_t>(m)].push_back(grp.exposure);

    std::vector<BridgeReport> report;
    for (std::size_t v = 0; v < memberships.size(); ++v) {
        if (memberships[v].size() < 2)
            continue;
        BridgeReport b;
        b.node = static_cast<int>(v);
        b.group_memberships = memberships[v];
        b.degree = deg.per_node[v];
        b.clustering = clus.per_node[v];
        report.push_back(std::move(b));
    }
    std::sort(report.begin(), report.end(), [](const BridgeReport &a, const BridgeReport &b) {
        if (a.group_memberships.size() != b.group_memberships.size())
            return a.group_memberships.size() > b.group_memberships.size();
        return a.node < b.node;
    });
    return report;
}

/// Reduces the exposome to its exposure groups: one vertex per group, a link
/// wherever two groups share nodes, weighted by the shared-node count.
inline GroupOverlap group_overlap(const GroupsResult &groups) {
    GroupOverlap overlap;
    overlap.group_count = static_cast<int>(groups.groups.size());
    for (int i = 0; i < overlap.group_count; ++i)
        for (int j = i + 1; j < overlap.group_count; ++j) {
            auto shared =
                detail::intersect_sorted(groups.groups[static_cast<std::size_t>(i)].members,
                                         groups.groups[static_cast<std::size_t>(j)].members);
            if (!shared.empty())
                overlap.links.push_back({i, j, static_cast<int>(shared.size())});
        }
    return overlap;
}

} // namespace exposome

#endif
