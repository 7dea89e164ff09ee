#pragma once

#include <algorithm>
#include <vector>

#include <strongdeps/graph.hpp>
#include <strongdeps/graph_stats.hpp>

// Reference small-world statistics computed a deliberately different way
// from the library (adjacency matrix, Floyd-Warshall distances, matrix
// component sweep). Suitable up to a few hundred vertices.
namespace testsupport {

inline strongdeps::GraphStats reference_stats(const strongdeps::DepGraph& g) {
    strongdeps::GraphStats stats;
    int n = g.vertex_count();
    stats.vertices = static_cast<std::size_t>(n);
    stats.edges = g.edge_count();
    if (n == 0) return stats;
    stats.average_degree = static_cast<double>(stats.edges) / n;
    if (n > 1)
        stats.density = static_cast<double>(stats.edges) /
                        (static_cast<double>(n) * (n - 1));

    // undirected support as a matrix
    std::vector<std::vector<char>> und(n, std::vector<char>(n, 0));
    for (int p = 0; p < n; ++p)
        for (int q : g.succ[p]) und[p][q] = und[q][p] = 1;

    double coeff_sum = 0;
    for (int v = 0; v < n; ++v) {
        std::vector<int> nbr;
        for (int u = 0; u < n; ++u)
            if (und[v][u]) nbr.push_back(u);
        if (nbr.size() < 2) continue;
        long long closed = 0;  // ordered neighbour pairs joined by an edge
        for (int a : nbr)
            for (int b : nbr)
                if (a != b && und[a][b]) ++closed;
        coeff_sum += static_cast<double>(closed) /
                     (static_cast<double>(nbr.size()) * (nbr.size() - 1));
    }
    stats.clustering_coefficient = coeff_sum / n;

    // components by repeated matrix sweeps
    std::vector<int> comp(n, -1);
    int comp_count = 0;
    for (int root = 0; root < n; ++root) {
        if (comp[root] != -1) continue;
        comp[root] = comp_count;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a)
                if (comp[a] == comp_count)
                    for (int b = 0; b < n; ++b)
                        if (und[a][b] && comp[b] == -1) {
                            comp[b] = comp_count;
                            grew = true;
                        }
        }
        ++comp_count;
    }
    stats.wcc_count = static_cast<std::size_t>(comp_count);
    std::vector<std::size_t> sizes(comp_count, 0);
    for (int v = 0; v < n; ++v) ++sizes[comp[v]];
    int largest = static_cast<int>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    stats.largest_wcc = sizes[largest];

    if (stats.largest_wcc > 1) {
        const long long inf = 1LL << 40;
        std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, inf));
        for (int v = 0; v < n; ++v) dist[v][v] = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (und[a][b]) dist[a][b] = 1;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
        long long sum = 0, pairs = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && comp[a] == largest && comp[b] == largest) {
                    sum += dist[a][b];
                    ++pairs;
                }
        stats.average_distance = static_cast<double>(sum) / pairs;
    }
    return stats;
}

}  // namespace testsupport
