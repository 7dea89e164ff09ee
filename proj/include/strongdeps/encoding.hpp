#pragma once

#include <cassert>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "strongdeps/model.hpp"
#include "strongdeps/sat.hpp"

namespace strongdeps {

// Propositional encoding of a repository: one boolean variable per
// package (variable = load-order index), with
//   - a clause (~p v d1 v ... v dk) per dependency clause of p, the di
//     ranging over all packages satisfying some predicate of the clause;
//   - (~p v ~q) per conflict pair, self excluded;
//   - (~pi v ~pj) for every two versions of one name.
// Immutable once built; clone per-worker query engines from it.
class RepositoryEncoding {
public:
    explicit RepositoryEncoding(const Repository& repo) : repo_(&repo) {
        int n = static_cast<int>(repo.size());
        for (int i = 0; i < n; ++i) base_.new_var();

        std::set<std::pair<int, int>> exclusions;
        std::set<std::string> names_done;
        for (int p = 0; p < n; ++p) {
            for (const Clause& clause : repo[p].depends.clauses) {
                std::vector<sat::Lit> lits;
                lits.push_back(sat::Lit::neg(p));
                bool self_satisfied = false;
                std::set<int> targets;
                for (const PackagePredicate& pred : clause)
                    for (PackageIndex t : repo.satisfiers(pred)) {
                        if (t == p) self_satisfied = true;
                        targets.insert(t);
                    }
                if (self_satisfied) continue;  // tautological once p holds
                for (int t : targets) lits.push_back(sat::Lit::pos(t));
                base_.add_clause(std::move(lits));
            }
            for (const PackagePredicate& pred : repo[p].conflicts)
                for (PackageIndex q : repo.satisfiers(pred))
                    if (q != p)
                        exclusions.insert(std::minmax(static_cast<int>(q), p));
            const std::string& name = repo[p].id.name;
            if (names_done.insert(name).second) {
                const auto& versions = *repo.versions_of(name);
                for (std::size_t a = 0; a < versions.size(); ++a)
                    for (std::size_t b = a + 1; b < versions.size(); ++b)
                        exclusions.insert(std::minmax(versions[a], versions[b]));
            }
        }
        for (auto [a, b] : exclusions)
            base_.add_clause({sat::Lit::neg(a), sat::Lit::neg(b)});
    }

    const Repository& repo() const { return *repo_; }
    const sat::Solver& base_solver() const { return base_; }
    std::size_t clause_count() const { return base_.base_clause_count(); }

    // DIMACS CNF debug dump; comments map 1-based variables to packages.
    void write_dimacs(std::ostream& out) const {
        out << "c repository encoding: 1 variable per package\n";
        for (std::size_t i = 0; i < repo_->size(); ++i)
            out << "c var " << i + 1 << " = " << (*repo_)[static_cast<int>(i)].id.name
                << ' ' << (*repo_)[static_cast<int>(i)].id.version << '\n';
        out << "p cnf " << base_.num_vars() << ' ' << base_.base_clause_count()
            << '\n';
        for (std::size_t c = 0; c < base_.base_clause_count(); ++c) {
            for (sat::Lit l : base_.base_clause(c))
                out << (l.negated() ? -(l.var() + 1) : l.var() + 1) << ' ';
            out << "0\n";
        }
    }

private:
    const Repository* repo_;
    sat::Solver base_;
};

// Per-worker query engine over one encoding. Not safe for concurrent use;
// clone one per thread. Boolean answers are independent of query history;
// install() models are made history-independent by dropping learned
// clauses before solving.
class SatQueries {
public:
    explicit SatQueries(const RepositoryEncoding& encoding)
        : repo_(&encoding.repo()),
          solver_(encoding.base_solver()),
          installable_(repo_->size(), -1) {}

    // True iff some healthy installation of the repository contains p.
    bool installable(PackageIndex p) {
        repo_->at(p);
        if (installable_[p] < 0) {
            sat::Lit assume[] = {sat::Lit::pos(p)};
            installable_[p] = solver_.solve(assume) ? 1 : 0;
        }
        return installable_[p] == 1;
    }

    // A healthy installation containing p; deterministic for a fixed
    // repository (not guaranteed minimal).
    Installation install(PackageIndex p) {
        if (!installable(p)) throw NotInstallable(to_string(repo_->at(p).id));
        solver_.forget_learned();
        sat::Lit assume[] = {sat::Lit::pos(p)};
        bool sat_ok = solver_.solve(assume);
        (void)sat_ok;
        assert(sat_ok);
        std::vector<PackageIndex> members;
        for (int v = 0; v < solver_.num_vars(); ++v)
            if (solver_.model_value(v) == sat::Value::True) members.push_back(v);
        return Installation(std::move(members));
    }

    // True iff every healthy installation containing p also contains q
    // (and p is installable). p == q holds by convention.
    bool strong_depends(PackageIndex p, PackageIndex q) {
        repo_->at(q);
        if (!installable(p)) throw NotInstallable(to_string(repo_->at(p).id));
        if (p == q) return true;
        sat::Lit assume[] = {sat::Lit::pos(p), sat::Lit::neg(q)};
        return !solver_.solve(assume);
    }

private:
    const Repository* repo_;
    sat::Solver solver_;
    std::vector<std::int8_t> installable_;
};

inline bool is_installable(PackageIndex p, const RepositoryEncoding& encoding) {
    SatQueries q(encoding);
    return q.installable(p);
}

}  // namespace strongdeps
