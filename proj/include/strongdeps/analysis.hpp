#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "strongdeps/graph.hpp"
#include "strongdeps/ratio.hpp"

namespace strongdeps {

// Is(p): every package strongly depending on p, plus p itself. On a
// strong graph these are exactly the predecessors of p.
inline std::vector<int> impact_set(int p, const DepGraph& g) {
    g.check_vertex(p);
    std::vector<int> out;
    out.reserve(g.pred[p].size() + 1);
    auto it = std::lower_bound(g.pred[p].begin(), g.pred[p].end(), p);
    out.insert(out.end(), g.pred[p].begin(), it);
    out.push_back(p);
    out.insert(out.end(), it, g.pred[p].end());
    return out;
}

// |Is(p)| - 1: the number of other packages a change in p can reach. An
// uninstallable p has an empty real impact set; the count comes out 0.
inline int sensitivity(int p, const DepGraph& g) {
    g.check_vertex(p);
    return static_cast<int>(g.pred[p].size());
}

// In-degree in the direct dependency graph (no self membership, no -1).
inline int direct_sensitivity(int p, const DepGraph& direct_graph) {
    direct_graph.check_vertex(p);
    return static_cast<int>(direct_graph.pred[p].size());
}

struct SensitivityRecord {
    PackageId package;
    int direct = 0;
    int strong = 0;
    int delta = 0;  // strong - direct
    bool installable = true;
};

// One record per vertex of the strong graph, direct counts matched by
// package identity. Both graphs must cover the same packages.
inline std::vector<SensitivityRecord> sensitivity_records(
    const DepGraph& strong_graph, const DepGraph& direct_graph) {
    std::map<PackageId, int> direct_index;
    for (int v = 0; v < direct_graph.vertex_count(); ++v)
        direct_index.emplace(direct_graph.vertices[v], v);

    std::vector<SensitivityRecord> out;
    out.reserve(strong_graph.vertices.size());
    for (int v = 0; v < strong_graph.vertex_count(); ++v) {
        auto it = direct_index.find(strong_graph.vertices[v]);
        if (it == direct_index.end())
            throw InputError("package missing from the direct graph: " +
                             to_string(strong_graph.vertices[v]));
        SensitivityRecord rec;
        rec.package = strong_graph.vertices[v];
        rec.direct = direct_sensitivity(it->second, direct_graph);
        rec.strong = sensitivity(v, strong_graph);
        rec.delta = rec.strong - rec.direct;
        rec.installable = strong_graph.installable[v] != 0;
        out.push_back(std::move(rec));
    }
    return out;
}

struct CorrelationStats {
    double spearman_rho = 0;
    double pearson_r = 0;
    double direct_mean = 0, direct_sigma = 0;
    double strong_mean = 0, strong_sigma = 0;
    double delta_mean = 0, delta_sigma = 0;
    // share of records with |delta - mean| <= k * sigma, k = 1, 2, 3
    double delta_within_sigma_pct[3] = {0, 0, 0};
};

namespace detail {

// Average ranks (ties share the mean of their rank range), 1-based.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double population_sigma(const std::vector<double>& v, double mean) {
    double s = 0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// Pearson product-moment correlation; NaN when a column is constant.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = mean_of(x), my = mean_of(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

inline CorrelationStats correlation_stats(
    const std::vector<SensitivityRecord>& records) {
    if (records.size() < 2)
        throw InputError("correlation statistics need at least 2 records");
    std::vector<double> direct, strong, delta;
    for (const auto& r : records) {
        direct.push_back(r.direct);
        strong.push_back(r.strong);
        delta.push_back(r.delta);
    }
    CorrelationStats out;
    out.pearson_r = detail::pearson(direct, strong);
    out.spearman_rho = detail::pearson(detail::average_ranks(direct),
                                       detail::average_ranks(strong));
    out.direct_mean = detail::mean_of(direct);
    out.direct_sigma = detail::population_sigma(direct, out.direct_mean);
    out.strong_mean = detail::mean_of(strong);
    out.strong_sigma = detail::population_sigma(strong, out.strong_mean);
    out.delta_mean = detail::mean_of(delta);
    out.delta_sigma = detail::population_sigma(delta, out.delta_mean);
    for (int k = 1; k <= 3; ++k) {
        std::size_t inside = 0;
        for (double d : delta)
            if (std::abs(d - out.delta_mean) <= k * out.delta_sigma) ++inside;
        out.delta_within_sigma_pct[k - 1] =
            100.0 * static_cast<double>(inside) / static_cast<double>(delta.size());
    }
    return out;
}

namespace detail {

// Cons(p) for dominance formulas: strong successors of p, plus p (the
// relation is reflexive on installable packages).
inline bool in_cons(int x, int p, const DepGraph& g) {
    return x == p || g.has_edge(p, x);
}

inline bool in_impact(int x, int p, const DepGraph& g) {
    return x == p || std::binary_search(g.pred[p].begin(), g.pred[p].end(), x);
}

}  // namespace detail

// p strongly dominates q: p => q and Is(q) \ Cons(p) is inside Is(p).
inline bool strong_dominance(int p, int q, const DepGraph& g) {
    g.check_vertex(p);
    g.check_vertex(q);
    if (p == q) return g.installable[p] != 0;
    if (!g.has_edge(p, q)) return false;
    for (int x : impact_set(q, g)) {
        if (detail::in_cons(x, p, g)) continue;
        if (!detail::in_impact(x, p, g)) return false;
    }
    return true;
}

// Relative strong dominance: when p => q, the percentage
// |(Is(q) \ Cons(p)) \ Is(p)| / |Is(p)| * 100, exact. None when p does
// not strongly depend on q (in particular for uninstallable p).
inline std::optional<Ratio> relative_dominance(int p, int q, const DepGraph& g) {
    g.check_vertex(p);
    g.check_vertex(q);
    if (!g.installable[p]) return std::nullopt;
    if (p != q && !g.has_edge(p, q)) return std::nullopt;
    std::int64_t unexplained = 0;
    for (int x : impact_set(q, g))
        if (!detail::in_cons(x, p, g) && !detail::in_impact(x, p, g)) ++unexplained;
    std::int64_t impact_p = static_cast<std::int64_t>(g.pred[p].size()) + 1;
    return Ratio::of(100 * unexplained, impact_p);
}

struct DominanceEdge {
    int dominator;
    int dominated;
    Ratio z;

    friend bool operator==(const DominanceEdge&, const DominanceEdge&) = default;
};

// Dominance graph at a fuzz threshold: all ordered pairs p => q with
// z(p, q) <= fuzz, with display redundancy removed — mutual-dominance
// classes keep a canonical cycle (members sorted by id) and the class
// condensation is transitively reduced, one representative edge per
// surviving class pair (smallest z, then smallest ids). A non-empty
// `allowed` mask restricts the relation to those vertices.
inline std::vector<DominanceEdge> dominance_graph(
    const DepGraph& g, Ratio fuzz, const std::vector<char>& allowed = {}) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> cand_succ(n);
    std::map<std::pair<int, int>, Ratio> cand_z;
    for (int p = 0; p < n; ++p) {
        if (!allowed.empty() && !allowed[p]) continue;
        for (int q : g.succ[p]) {
            if (!allowed.empty() && !allowed[q]) continue;
            auto z = relative_dominance(p, q, g);
            if (z && *z <= fuzz) {
                cand_succ[p].push_back(q);
                cand_z.emplace(std::make_pair(p, q), *z);
            }
        }
    }

    SccResult scc = strongly_connected_components(cand_succ);
    int nc = static_cast<int>(scc.members.size());

    // reachability over the (not necessarily closed) condensation
    auto cond = condensation_edges(cand_succ, scc);
    std::vector<detail::BitRow> reach(nc, detail::BitRow(nc));
    for (int c = 0; c < nc; ++c)
        for (int d : cond[c]) {
            reach[c].set(d);
            reach[c].or_with(reach[d]);
        }

    std::vector<DominanceEdge> out;

    // intra-class edges: canonical cycle when fully present, otherwise
    // every candidate inside the class
    auto emit = [&](int a, int b) {
        out.push_back({a, b, cand_z.at({a, b})});
    };
    for (int c = 0; c < nc; ++c) {
        const auto& members = scc.members[c];  // sorted by vertex id
        if (members.size() < 2) continue;
        bool cycle_complete = true;
        for (std::size_t i = 0; i < members.size() && cycle_complete; ++i) {
            int a = members[i], b = members[(i + 1) % members.size()];
            cycle_complete = cand_z.count({a, b}) != 0;
        }
        if (cycle_complete) {
            for (std::size_t i = 0; i < members.size(); ++i)
                emit(members[i], members[(i + 1) % members.size()]);
        } else {
            for (int a : members)
                for (int b : cand_succ[a])
                    if (scc.comp[b] == c) emit(a, b);
        }
    }

    // inter-class: best representative of each reduced condensation edge
    std::map<std::pair<int, int>, DominanceEdge> best;
    for (const auto& [pq, z] : cand_z) {
        auto [p, q] = pq;
        int a = scc.comp[p], b = scc.comp[q];
        if (a == b) continue;
        bool redundant = false;
        for (int c : cond[a])
            if (c != b && reach[c].test(b)) {
                redundant = true;
                break;
            }
        if (redundant) continue;
        auto it = best.find({a, b});
        DominanceEdge e{p, q, z};
        if (it == best.end()) {
            best.emplace(std::make_pair(a, b), e);
        } else {
            const DominanceEdge& old = it->second;
            if (z < old.z ||
                (z == old.z && std::make_pair(p, q) <
                                   std::make_pair(old.dominator, old.dominated)))
                it->second = e;
        }
    }
    for (const auto& [_, e] : best) out.push_back(e);

    std::sort(out.begin(), out.end(), [](const DominanceEdge& a, const DominanceEdge& b) {
        return std::make_pair(a.dominator, a.dominated) <
               std::make_pair(b.dominator, b.dominated);
    });
    return out;
}

struct DominanceCluster {
    std::vector<int> members;  // sorted vertex ids
    std::vector<int> roots;    // members whose equivalence class has no
                               // incoming dominance edge inside the cluster
    bool trivial = false;      // size <= 2
};

// Connected components of the undirected support of a dominance edge set.
inline std::vector<DominanceCluster> dominance_clusters(
    const std::vector<DominanceEdge>& edges) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        int r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) x = std::exchange(parent[x], r);
        return r;
    };
    auto ensure = [&](int x) {
        if (!parent.count(x)) parent[x] = x;
    };
    for (const auto& e : edges) {
        ensure(e.dominator);
        ensure(e.dominated);
        parent[find(e.dominator)] = find(e.dominated);
    }

    std::map<int, std::vector<int>> groups;
    for (const auto& [v, _] : parent) groups[find(v)].push_back(v);

    // local SCC per cluster to find the dominator roots
    std::vector<DominanceCluster> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        std::map<int, int> local;
        for (std::size_t i = 0; i < members.size(); ++i)
            local[members[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> succ(members.size());
        for (const auto& e : edges)
            if (local.count(e.dominator) && local.count(e.dominated) &&
                find(e.dominator) == root)
                succ[local[e.dominator]].push_back(local[e.dominated]);
        SccResult scc = strongly_connected_components(succ);
        std::vector<char> has_incoming(scc.members.size(), 0);
        for (std::size_t v = 0; v < succ.size(); ++v)
            for (int w : succ[v])
                if (scc.comp[v] != scc.comp[w]) has_incoming[scc.comp[w]] = 1;
        DominanceCluster cluster;
        cluster.members = members;
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (!has_incoming[scc.comp[v]]) cluster.roots.push_back(members[v]);
        cluster.trivial = members.size() <= 2;
        out.push_back(std::move(cluster));
    }
    return out;
}

struct RemovabilityReport {
    bool removable = false;          // no other package strongly needs p
    std::vector<int> co_removal;     // minimal set removable as a whole
};

// A package is removable in isolation iff its impact set is just itself;
// otherwise the inbound closure must go with it.
inline RemovabilityReport removability_check(int p, const DepGraph& g) {
    RemovabilityReport rep;
    rep.co_removal = impact_set(p, g);
    rep.removable = rep.co_removal.size() == 1;
    return rep;
}

}  // namespace strongdeps
