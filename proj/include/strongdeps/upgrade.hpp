#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "strongdeps/analysis.hpp"
#include "strongdeps/graph.hpp"
#include "strongdeps/model.hpp"

namespace strongdeps {

// Packages of an installation a proposed upgrade plan would touch.
struct UpgradePlan {
    std::vector<int> touched;  // sorted unique vertex/member indices
};

// Is(p) restricted to what is actually installed. A sound lower bound on
// the locally affected packages (the chosen disjunct of an alternative
// is not tracked).
inline std::vector<int> installation_impact_set(int p, const DepGraph& g,
                                                const Installation& inst) {
    g.check_vertex(p);
    if (!inst.contains(p))
        throw InputError("package not in the installation: " +
                         to_string(g.vertices[p]));
    std::vector<int> out;
    for (int x : impact_set(p, g))
        if (inst.contains(x)) out.push_back(x);
    return out;
}

// Overall plan risk: the sum of installation impact set sizes over all
// touched packages.
inline long long upgrade_risk(const UpgradePlan& plan, const DepGraph& g,
                              const Installation& inst) {
    long long total = 0;
    for (int p : plan.touched)
        total += static_cast<long long>(installation_impact_set(p, g, inst).size());
    return total;
}

namespace detail {

// Strong successor names of the (highest-version) vertex named `name`,
// or nothing when the graph has no such package.
inline std::optional<std::set<std::string>> successor_names(
    const DepGraph& g, const std::string& name) {
    int best = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.vertices[v].name != name) continue;
        if (best == -1 ||
            version_compare(g.vertices[v].version, g.vertices[best].version) ==
                Ordering::Greater)
            best = v;
    }
    if (best == -1) return std::nullopt;
    std::set<std::string> out;
    for (int q : g.succ[best]) out.insert(g.vertices[q].name);
    return out;
}

}  // namespace detail

// Packages that switching to `targets` under the new snapshot forces to
// upgrade: strong successors gained between the old and new graphs.
// Cross-snapshot package identity is by name.
inline std::vector<std::string> forced_upgrades(
    const DepGraph& old_graph, const DepGraph& new_graph,
    const std::vector<std::string>& targets) {
    std::vector<std::string> missing;
    std::set<std::string> forced;
    for (const std::string& t : targets) {
        auto new_succ = detail::successor_names(new_graph, t);
        if (!new_succ) {
            missing.push_back(t);
            continue;
        }
        auto old_succ = detail::successor_names(old_graph, t)
                            .value_or(std::set<std::string>{});
        for (const std::string& s : *new_succ)
            if (!old_succ.count(s)) forced.insert(s);
    }
    if (!missing.empty()) {
        std::string msg = "targets missing from the new snapshot:";
        for (const std::string& m : missing) msg += " " + m;
        throw InputError(msg);
    }
    return {forced.begin(), forced.end()};
}

// Resolves installation/plan name lists against a repository; each name
// maps to its highest version. Unknown names are collected into one
// error.
inline std::vector<int> resolve_names(const Repository& repo,
                                      const std::vector<std::string>& names) {
    std::vector<int> out;
    std::vector<std::string> unknown;
    for (const std::string& name : names) {
        const auto* versions = repo.versions_of(name);
        if (!versions || versions->empty()) {
            unknown.push_back(name);
            continue;
        }
        int best = (*versions)[0];
        for (int v : *versions)
            if (version_compare(repo[v].id.version, repo[best].id.version) ==
                Ordering::Greater)
                best = v;
        out.push_back(best);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown packages:";
        for (const std::string& u : unknown) msg += " " + u;
        throw InputError(msg);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace strongdeps
