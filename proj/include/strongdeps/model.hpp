#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "strongdeps/errors.hpp"
#include "strongdeps/version.hpp"

namespace strongdeps {

struct PackageId {
    std::string name;
    std::string version;

    friend bool operator==(const PackageId&, const PackageId&) = default;
    friend auto operator<=>(const PackageId&, const PackageId&) = default;
};

inline std::string to_string(const PackageId& id) {
    return id.name + " (= " + id.version + ")";
}

struct VersionConstraint {
    Relation relation;
    std::string version;

    friend bool operator==(const VersionConstraint&, const VersionConstraint&) = default;
};

// One target of a dependency or conflict. Without a constraint it matches
// any version of the name and any provider of the name; with a constraint
// it matches real packages of that name only (provides are unversioned).
struct PackagePredicate {
    std::string target;
    std::optional<VersionConstraint> constraint;

    friend bool operator==(const PackagePredicate&, const PackagePredicate&) = default;
};

// A disjunction of predicates. Never empty.
using Clause = std::vector<PackagePredicate>;

// Conjunction of clauses (CNF). An empty clause list means "no dependencies".
struct DependencyFormula {
    std::vector<Clause> clauses;

    friend bool operator==(const DependencyFormula&, const DependencyFormula&) = default;
};

struct Package {
    PackageId id;
    DependencyFormula depends;  // Depends and Pre-Depends merged
    std::vector<PackagePredicate> conflicts;
    std::vector<std::string> provides;  // unversioned feature names
};

// Packages are addressed by their load-order index everywhere below; the
// index doubles as the SAT variable and the graph vertex.
using PackageIndex = int;

class Repository {
public:
    // Adds a package; a duplicate (name, version) replaces the earlier
    // stanza in place (last one wins) and reports false.
    bool add(Package pkg) {
        if (auto existing = find(pkg.id.name, pkg.id.version)) {
            unindex_provides(*existing);
            packages_[*existing] = std::move(pkg);
            index_provides(*existing);
            return false;
        }
        PackageIndex idx = static_cast<PackageIndex>(packages_.size());
        by_name_[pkg.id.name].push_back(idx);
        packages_.push_back(std::move(pkg));
        index_provides(idx);
        return true;
    }

    std::size_t size() const { return packages_.size(); }
    bool empty() const { return packages_.empty(); }

    const Package& operator[](PackageIndex i) const { return packages_[i]; }

    const Package& at(PackageIndex i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= packages_.size())
            throw InputError("unknown package index " + std::to_string(i));
        return packages_[i];
    }

    std::optional<PackageIndex> find(std::string_view name,
                                     std::string_view version) const {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end()) return std::nullopt;
        for (PackageIndex i : it->second)
            if (packages_[i].id.version == version) return i;
        return std::nullopt;
    }

    // All real packages carrying this name, in load order.
    const std::vector<PackageIndex>* versions_of(std::string_view name) const {
        auto it = by_name_.find(std::string(name));
        return it == by_name_.end() ? nullptr : &it->second;
    }

    // Every package satisfying the predicate: name matches with the version
    // constraint honoured, plus providers of the name when unconstrained.
    std::vector<PackageIndex> satisfiers(const PackagePredicate& pred) const {
        std::vector<PackageIndex> out;
        if (auto it = by_name_.find(pred.target); it != by_name_.end()) {
            for (PackageIndex i : it->second) {
                if (!pred.constraint ||
                    version_satisfies(packages_[i].id.version,
                                      pred.constraint->relation,
                                      pred.constraint->version))
                    out.push_back(i);
            }
        }
        if (!pred.constraint) {
            if (auto it = by_provides_.find(pred.target); it != by_provides_.end())
                out.insert(out.end(), it->second.begin(), it->second.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    auto begin() const { return packages_.begin(); }
    auto end() const { return packages_.end(); }

private:
    void index_provides(PackageIndex idx) {
        for (const std::string& feature : packages_[idx].provides)
            by_provides_[feature].push_back(idx);
    }

    void unindex_provides(PackageIndex idx) {
        for (const std::string& feature : packages_[idx].provides) {
            auto& v = by_provides_[feature];
            v.erase(std::remove(v.begin(), v.end(), idx), v.end());
        }
    }

    std::vector<Package> packages_;
    std::unordered_map<std::string, std::vector<PackageIndex>> by_name_;
    std::unordered_map<std::string, std::vector<PackageIndex>> by_provides_;
};

// A subset of one repository's packages, kept as sorted unique indices.
struct Installation {
    std::vector<PackageIndex> members;

    Installation() = default;
    explicit Installation(std::vector<PackageIndex> m) : members(std::move(m)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    bool contains(PackageIndex i) const {
        return std::binary_search(members.begin(), members.end(), i);
    }
    std::size_t size() const { return members.size(); }
};

struct HealthViolations {
    // (member, clause index) pairs with no satisfying member
    std::vector<std::pair<PackageIndex, int>> unsatisfied_clauses;
    // (member, other member) pairs where a conflict predicate matches
    std::vector<std::pair<PackageIndex, PackageIndex>> conflicts;
    // member pairs sharing a package name (implicit single-version rule)
    std::vector<std::pair<PackageIndex, PackageIndex>> same_name;

    bool clean() const {
        return unsatisfied_clauses.empty() && conflicts.empty() && same_name.empty();
    }
};

namespace detail {

// Does installed package `cand` satisfy `pred`? Mirrors
// Repository::satisfiers but checks a single candidate.
inline bool member_satisfies(const Package& cand, const PackagePredicate& pred) {
    if (cand.id.name == pred.target) {
        if (!pred.constraint) return true;
        return version_satisfies(cand.id.version, pred.constraint->relation,
                                 pred.constraint->version);
    }
    if (pred.constraint) return false;  // provides are unversioned
    return std::find(cand.provides.begin(), cand.provides.end(), pred.target) !=
           cand.provides.end();
}

}  // namespace detail

inline HealthViolations health_violations(const Installation& inst,
                                          const Repository& repo) {
    HealthViolations out;
    for (PackageIndex i : inst.members) repo.at(i);  // validates indices

    for (std::size_t a = 0; a < inst.members.size(); ++a)
        for (std::size_t b = a + 1; b < inst.members.size(); ++b)
            if (repo[inst.members[a]].id.name == repo[inst.members[b]].id.name)
                out.same_name.emplace_back(inst.members[a], inst.members[b]);

    for (PackageIndex i : inst.members) {
        const Package& p = repo[i];
        const auto& clauses = p.depends.clauses;
        for (std::size_t c = 0; c < clauses.size(); ++c) {
            bool satisfied = false;
            for (const PackagePredicate& pred : clauses[c]) {
                for (PackageIndex m : inst.members) {
                    if (detail::member_satisfies(repo[m], pred)) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) break;
            }
            if (!satisfied) out.unsatisfied_clauses.emplace_back(i, static_cast<int>(c));
        }
        for (const PackagePredicate& pred : p.conflicts) {
            for (PackageIndex m : inst.members) {
                if (m == i) continue;  // self-conflicts are ignored
                if (detail::member_satisfies(repo[m], pred))
                    out.conflicts.emplace_back(i, m);
            }
        }
    }
    return out;
}

// True iff every member's dependencies are satisfied inside the set, no
// member's conflict matches another member, and no name appears twice.
inline bool is_healthy(const Installation& inst, const Repository& repo) {
    return health_violations(inst, repo).clean();
}

}  // namespace strongdeps
