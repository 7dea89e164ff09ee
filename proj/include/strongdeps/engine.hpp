#pragma once

#include <exception>
#include <set>
#include <thread>
#include <vector>

#include "strongdeps/encoding.hpp"
#include "strongdeps/graph.hpp"
#include "strongdeps/model.hpp"

namespace strongdeps {

struct EngineOptions {
    int workers = 1;
};

namespace detail {

inline DepGraph graph_shell(const Repository& repo, GraphKind kind) {
    DepGraph g;
    g.kind = kind;
    g.vertices.reserve(repo.size());
    for (const Package& p : repo) g.vertices.push_back(p.id);
    g.installable.assign(repo.size(), 1);
    g.succ.assign(repo.size(), {});
    return g;
}

inline int clamp_workers(int workers, int n) {
    return std::max(1, std::min(workers, std::max(n, 1)));
}

// Runs fn(w, p) for p in [0, n) across `workers` threads on contiguous
// blocks; w is the worker index. Results must land in per-p slots; the
// partition then cannot influence the merged outcome.
template <typename Fn>
void parallel_over_packages(int n, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (int p = 0; p < n; ++p) fn(0, p);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int begin = w * chunk;
        int end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                for (int p = begin; p < end; ++p) fn(w, p);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Syntactic dependency graph: an edge (p, q) whenever q satisfies some
// predicate of p's dependency formula, conjunct or disjunct alike.
inline DepGraph direct_dependency_graph(const Repository& repo) {
    DepGraph g = detail::graph_shell(repo, GraphKind::Direct);
    for (int p = 0; p < static_cast<int>(repo.size()); ++p) {
        std::set<int> targets;
        for (const Clause& clause : repo[p].depends.clauses)
            for (const PackagePredicate& pred : clause)
                for (PackageIndex q : repo.satisfiers(pred))
                    if (q != p) targets.insert(q);
        g.succ[p].assign(targets.begin(), targets.end());
    }
    g.rebuild_pred();
    return g;
}

// Adjacency of the conjunctive sub-relation: p -> q when some clause of
// p's formula has q as its only satisfying package (a forced target).
inline std::vector<std::vector<int>> conjunctive_adjacency(const Repository& repo) {
    std::vector<std::vector<int>> adj(repo.size());
    for (int p = 0; p < static_cast<int>(repo.size()); ++p) {
        std::set<int> forced;
        for (const Clause& clause : repo[p].depends.clauses) {
            std::set<int> sat;
            for (const PackagePredicate& pred : clause)
                for (PackageIndex q : repo.satisfiers(pred)) sat.insert(q);
            if (sat.size() == 1 && *sat.begin() != p) forced.insert(*sat.begin());
        }
        adj[p].assign(forced.begin(), forced.end());
    }
    return adj;
}

// Transitive closure of the conjunctive sub-relation, as per-source
// sorted successor lists (self pairs dropped). Every returned pair is a
// strong dependency whenever the source is installable.
inline std::vector<std::vector<int>> conjunctive_closure(const Repository& repo) {
    auto adj = conjunctive_adjacency(repo);
    int n = static_cast<int>(adj.size());
    std::vector<std::vector<int>> out(n);
    std::vector<int> stack;
    std::vector<char> seen(n, 0);
    for (int p = 0; p < n; ++p) {
        stack.assign(adj[p].begin(), adj[p].end());
        std::fill(seen.begin(), seen.end(), 0);
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            if (seen[q]) continue;
            seen[q] = 1;
            for (int r : adj[q])
                if (!seen[r]) stack.push_back(r);
        }
        seen[p] = 0;
        for (int q = 0; q < n; ++q)
            if (seen[q]) out[p].push_back(q);
    }
    return out;
}

// The n^2 oracle algorithm: one SAT query per ordered pair of distinct
// packages with an installable source. Reference path for the optimized
// engine; far too slow for real repositories.
inline DepGraph strong_dependencies_naive(const Repository& repo) {
    RepositoryEncoding encoding(repo);
    SatQueries queries(encoding);
    DepGraph g = detail::graph_shell(repo, GraphKind::Strong);
    int n = static_cast<int>(repo.size());
    for (int p = 0; p < n; ++p) {
        if (!queries.installable(p)) {
            g.installable[p] = 0;
            continue;
        }
        for (int q = 0; q < n; ++q)
            if (q != p && queries.strong_depends(p, q)) g.succ[p].push_back(q);
    }
    g = transitive_closure(g);  // already closed; normalises representation
    return g;
}

// The optimized algorithm: seed with the conjunctive closure, then for
// each installable p query only the members of one concrete installation
// of p — every strong successor must appear there — and finally re-close
// transitively.
inline DepGraph strong_dependencies(const Repository& repo,
                                    const EngineOptions& options = {}) {
    int n = static_cast<int>(repo.size());
    RepositoryEncoding encoding(repo);
    auto conj = conjunctive_closure(repo);

    DepGraph g = detail::graph_shell(repo, GraphKind::Strong);
    std::vector<std::vector<int>>& succ = g.succ;

    int workers = detail::clamp_workers(options.workers, n);
    std::vector<SatQueries> engines;
    engines.reserve(workers);
    for (int w = 0; w < workers; ++w) engines.emplace_back(encoding);

    detail::parallel_over_packages(n, workers, [&](int w, int p) {
        SatQueries& queries = engines[w];
        if (!queries.installable(p)) {
            g.installable[p] = 0;
            return;
        }
        Installation witness = queries.install(p);
        std::set<int> successors(conj[p].begin(), conj[p].end());
        for (int q : witness.members) {
            if (q == p || successors.count(q)) continue;
            if (queries.strong_depends(p, q)) successors.insert(q);
        }
        succ[p].assign(successors.begin(), successors.end());
    });

    g = transitive_closure(g);
    return g;
}

}  // namespace strongdeps
