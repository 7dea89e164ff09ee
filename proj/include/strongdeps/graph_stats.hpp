#pragma once

#include <algorithm>
#include <vector>

#include "strongdeps/graph.hpp"

namespace strongdeps {

struct GraphStats {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double average_degree = 0;          // edges / vertices
    double clustering_coefficient = 0;  // mean local coefficient, undirected support
    double average_distance = 0;        // within the largest WCC, ordered pairs
    std::size_t wcc_count = 0;
    std::size_t largest_wcc = 0;
    double density = 0;  // edges / (V * (V - 1))
};

// Minimal graph with the same transitive closure as the (closed) input.
// Cycles are collapsed into their components, the condensation DAG gets
// its unique reduction, and each nontrivial component re-expands as a
// cycle over its members sorted by package id.
inline DepGraph detransitivise(const DepGraph& g) {
    if (!is_transitively_closed(g))
        throw InputError("detransitivise expects a transitively closed graph");

    SccResult scc = strongly_connected_components(g.succ);
    auto cond = condensation_edges(g.succ, scc);
    int nc = static_cast<int>(scc.members.size());

    // The condensation of a closed graph is itself closed, so an edge
    // (A, B) is redundant exactly when B is a successor of a successor.
    std::vector<detail::BitRow> redundant(nc, detail::BitRow(nc));
    for (int c = 0; c < nc; ++c) {
        detail::BitRow via(nc);
        for (int d : cond[c])
            for (int e : cond[d]) via.set(e);
        redundant[c] = via;
    }

    // canonical member order: sorted by (name, version)
    auto id_less = [&](int a, int b) { return g.vertices[a] < g.vertices[b]; };
    std::vector<std::vector<int>> ordered(nc);
    for (int c = 0; c < nc; ++c) {
        ordered[c] = scc.members[c];
        std::sort(ordered[c].begin(), ordered[c].end(), id_less);
    }

    DepGraph out;
    out.kind = g.kind;
    out.vertices = g.vertices;
    out.installable = g.installable;
    out.succ.assign(g.vertices.size(), {});
    for (int c = 0; c < nc; ++c) {
        const auto& members = ordered[c];
        if (members.size() > 1)
            for (std::size_t i = 0; i < members.size(); ++i)
                out.succ[members[i]].push_back(members[(i + 1) % members.size()]);
        for (int d : cond[c])
            if (!redundant[c].test(d))
                out.succ[ordered[c].front()].push_back(ordered[d].front());
    }
    for (auto& s : out.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    out.rebuild_pred();
    return out;
}

namespace detail {

inline std::vector<std::vector<int>> undirected_support(const DepGraph& g) {
    std::vector<std::vector<int>> und(g.vertices.size());
    for (int v = 0; v < g.vertex_count(); ++v) {
        und[v].reserve(g.succ[v].size() + g.pred[v].size());
        std::merge(g.succ[v].begin(), g.succ[v].end(), g.pred[v].begin(),
                   g.pred[v].end(), std::back_inserter(und[v]));
        und[v].erase(std::unique(und[v].begin(), und[v].end()), und[v].end());
    }
    return und;
}

inline std::size_t sorted_intersection_size(const std::vector<int>& a,
                                            const std::vector<int>& b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

}  // namespace detail

// Small-world measures per the usual undirected conventions: local
// clustering 2*T / (k(k-1)) (vertices of degree < 2 contribute 0),
// average shortest-path length over ordered pairs in the largest weakly
// connected component.
inline GraphStats small_world_stats(const DepGraph& g) {
    GraphStats stats;
    std::size_t n = g.vertices.size();
    stats.vertices = n;
    stats.edges = g.edge_count();
    if (n == 0) return stats;

    stats.average_degree = static_cast<double>(stats.edges) / static_cast<double>(n);
    if (n > 1)
        stats.density = static_cast<double>(stats.edges) /
                        (static_cast<double>(n) * static_cast<double>(n - 1));

    auto und = detail::undirected_support(g);

    double coeff_sum = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t k = und[v].size();
        if (k < 2) continue;
        std::size_t closed_pairs = 0;  // ordered neighbour pairs with an edge
        for (int u : und[v])
            closed_pairs += detail::sorted_intersection_size(und[u], und[v]);
        coeff_sum += static_cast<double>(closed_pairs) /
                     (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    stats.clustering_coefficient = coeff_sum / static_cast<double>(n);

    // weakly connected components
    std::vector<int> comp(n, -1);
    std::vector<std::size_t> comp_size;
    std::vector<int> queue;
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != -1) continue;
        int c = static_cast<int>(comp_size.size());
        comp_size.push_back(0);
        queue.assign(1, static_cast<int>(root));
        comp[root] = c;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++comp_size[c];
            for (int w : und[v])
                if (comp[w] == -1) {
                    comp[w] = c;
                    queue.push_back(w);
                }
        }
    }
    stats.wcc_count = comp_size.size();
    int largest = static_cast<int>(std::max_element(comp_size.begin(), comp_size.end()) -
                                   comp_size.begin());
    stats.largest_wcc = comp_size[largest];

    // exact BFS from every vertex of the largest WCC
    if (stats.largest_wcc > 1) {
        unsigned long long dist_sum = 0, pair_count = 0;
        std::vector<int> dist(n);
        std::vector<int> bfs;
        for (std::size_t s = 0; s < n; ++s) {
            if (comp[s] != largest) continue;
            std::fill(dist.begin(), dist.end(), -1);
            bfs.assign(1, static_cast<int>(s));
            dist[s] = 0;
            for (std::size_t head = 0; head < bfs.size(); ++head) {
                int v = bfs[head];
                for (int w : und[v])
                    if (dist[w] == -1) {
                        dist[w] = dist[v] + 1;
                        bfs.push_back(w);
                        dist_sum += static_cast<unsigned long long>(dist[w]);
                        ++pair_count;
                    }
            }
        }
        stats.average_distance =
            static_cast<double>(dist_sum) / static_cast<double>(pair_count);
    }
    return stats;
}

}  // namespace strongdeps
