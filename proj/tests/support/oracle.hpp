#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <strongdeps/model.hpp>

// Brute-force reference semantics: enumerate every subset of the
// repository, keep the healthy ones, and read installability and strong
// dependencies straight off Definition 1. Only for repos of <= ~16
// packages; completely independent of the SAT path.
namespace testsupport {

struct OracleResult {
    std::vector<char> installable;
    std::set<std::pair<int, int>> strong_edges;  // (p, q), p != q
    std::vector<std::uint32_t> healthy_sets;     // membership bitmasks
};

inline OracleResult enumerate_oracle(const strongdeps::Repository& repo) {
    using namespace strongdeps;
    int n = static_cast<int>(repo.size());
    OracleResult res;
    res.installable.assign(n, 0);

    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask & (std::uint32_t{1} << i)) members.push_back(i);
        if (is_healthy(Installation(std::move(members)), repo))
            res.healthy_sets.push_back(mask);
    }

    // forced[p] = AND over healthy sets containing p
    std::vector<std::uint32_t> forced(n, ~std::uint32_t{0});
    for (std::uint32_t mask : res.healthy_sets)
        for (int p = 0; p < n; ++p)
            if (mask & (std::uint32_t{1} << p)) {
                res.installable[p] = 1;
                forced[p] &= mask;
            }

    for (int p = 0; p < n; ++p) {
        if (!res.installable[p]) continue;
        for (int q = 0; q < n; ++q)
            if (q != p && (forced[p] & (std::uint32_t{1} << q)))
                res.strong_edges.emplace(p, q);
    }
    return res;
}

inline std::set<int> oracle_impact_set(int p, const OracleResult& oracle) {
    std::set<int> out{p};
    for (const auto& [a, b] : oracle.strong_edges)
        if (b == p) out.insert(a);
    return out;
}

}  // namespace testsupport
