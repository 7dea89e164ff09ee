#pragma once

#include <random>
#include <string>

#include <strongdeps/graph.hpp>

namespace testsupport {

// Random digraph with the given edge probability; acyclic when requested
// (edges only from lower to higher index).
inline strongdeps::DepGraph random_digraph(std::mt19937& rng, int n,
                                           double edge_prob,
                                           bool acyclic = false) {
    strongdeps::DepGraph g;
    g.kind = strongdeps::GraphKind::Strong;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int v = 0; v < n; ++v) {
        g.vertices.push_back({"v" + std::to_string(v), "1"});
        g.installable.push_back(1);
    }
    g.succ.assign(n, {});
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (p == q || (acyclic && q < p)) continue;
            if (coin(rng) < edge_prob) g.succ[p].push_back(q);
        }
    for (auto& s : g.succ) std::sort(s.begin(), s.end());
    g.rebuild_pred();
    return g;
}

}  // namespace testsupport
