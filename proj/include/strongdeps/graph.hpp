#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "strongdeps/errors.hpp"
#include "strongdeps/model.hpp"

namespace strongdeps {

enum class GraphKind { Direct, Strong };

// Directed dependency graph over a repository's packages. Vertices carry
// their PackageIds so an exported graph is self-contained. Successor and
// predecessor lists are sorted; self loops are never stored.
struct DepGraph {
    GraphKind kind = GraphKind::Strong;
    std::vector<PackageId> vertices;
    std::vector<char> installable;  // per vertex; all-1 for direct graphs
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    int vertex_count() const { return static_cast<int>(vertices.size()); }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& s : succ) n += s.size();
        return n;
    }

    bool has_edge(int p, int q) const {
        return std::binary_search(succ[p].begin(), succ[p].end(), q);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count())
            throw InputError("unknown graph vertex " + std::to_string(v));
    }

    int require_vertex(const PackageId& id) const {
        for (int v = 0; v < vertex_count(); ++v)
            if (vertices[v] == id) return v;
        throw InputError("package not in graph: " + to_string(id));
    }

    void rebuild_pred() {
        pred.assign(vertices.size(), {});
        for (int p = 0; p < vertex_count(); ++p)
            for (int q : succ[p]) pred[q].push_back(p);
        for (auto& v : pred) std::sort(v.begin(), v.end());
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(edge_count());
        for (int p = 0; p < vertex_count(); ++p)
            for (int q : succ[p]) out.emplace_back(p, q);
        return out;
    }

    friend bool operator==(const DepGraph& a, const DepGraph& b) {
        return a.kind == b.kind && a.vertices == b.vertices &&
               a.installable == b.installable && a.succ == b.succ;
    }
};

namespace detail {

// Fixed-width bit row used by closure/reduction sweeps.
class BitRow {
public:
    explicit BitRow(int bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void clear(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void or_with(const BitRow& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    }
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                fn(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace detail

// Strongly connected components (iterative Tarjan). Component ids are in
// reverse topological order: every edge (u, v) across components has
// comp[u] > comp[v].
struct SccResult {
    std::vector<int> comp;                  // vertex -> component id
    std::vector<std::vector<int>> members;  // component id -> sorted vertices
};

inline SccResult strongly_connected_components(
    const std::vector<std::vector<int>>& succ) {
    int n = static_cast<int>(succ.size());
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (child < succ[v].size()) {
                int w = succ[v][child++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::vector<int> comp_members;
                for (;;) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    res.comp[w] = static_cast<int>(res.members.size());
                    comp_members.push_back(w);
                    if (w == v) break;
                }
                std::sort(comp_members.begin(), comp_members.end());
                res.members.push_back(std::move(comp_members));
            }
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return res;
}

// Deduplicated condensation adjacency (component ids of `scc`).
inline std::vector<std::vector<int>> condensation_edges(
    const std::vector<std::vector<int>>& succ, const SccResult& scc) {
    std::vector<std::vector<int>> out(scc.members.size());
    for (std::size_t v = 0; v < succ.size(); ++v)
        for (int w : succ[v])
            if (scc.comp[v] != scc.comp[w]) out[scc.comp[v]].push_back(scc.comp[w]);
    for (auto& adj : out) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return out;
}

// Replaces the edge set with its transitive closure. Works on arbitrary
// digraphs by closing over the condensation; members of a nontrivial
// component reach each other (self loops stay implicit).
inline DepGraph transitive_closure(const DepGraph& g) {
    int n = g.vertex_count();
    SccResult scc = strongly_connected_components(g.succ);
    auto cond = condensation_edges(g.succ, scc);
    int nc = static_cast<int>(scc.members.size());

    // reach[c] = vertices reachable from component c (excluding c's own
    // members); component ids ascend in reverse topological order, so
    // successors are always finished first.
    std::vector<detail::BitRow> reach(nc, detail::BitRow(n));
    for (int c = 0; c < nc; ++c) {
        for (int d : cond[c]) {
            reach[c].or_with(reach[d]);
            for (int w : scc.members[d]) reach[c].set(w);
        }
    }

    DepGraph out;
    out.kind = g.kind;
    out.vertices = g.vertices;
    out.installable = g.installable;
    out.succ.assign(n, {});
    for (int v = 0; v < n; ++v) {
        int c = scc.comp[v];
        detail::BitRow row = reach[c];
        if (scc.members[c].size() > 1)
            for (int w : scc.members[c]) row.set(w);
        row.clear(v);
        row.for_each([&](int w) { out.succ[v].push_back(w); });
    }
    out.rebuild_pred();
    return out;
}

// Transitivity check per the graph invariant: (p,q) and (q,r) edges with
// p != r imply a (p,r) edge.
inline bool is_transitively_closed(const DepGraph& g) {
    for (int p = 0; p < g.vertex_count(); ++p)
        for (int q : g.succ[p])
            for (int r : g.succ[q])
                if (r != p && !g.has_edge(p, r)) return false;
    return true;
}

}  // namespace strongdeps
