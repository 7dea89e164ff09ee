#pragma once

#include <random>
#include <string>
#include <vector>

#include <strongdeps/model.hpp>

// Deterministic random repositories for oracle-equivalence and property
// tests: CNF dependencies with alternatives, version constraints, virtual
// packages, conflicts, duplicate names, and dangling targets.
namespace testsupport {

struct RandomRepoOptions {
    int min_packages = 1;
    int max_packages = 10;
    double disjunction_prob = 0.35;   // chance a clause gets a 2nd predicate
    double provides_prob = 0.25;
    double conflict_prob = 0.30;
    double constraint_prob = 0.15;    // versioned predicate
    double missing_target_prob = 0.05;
    double duplicate_name_prob = 0.15;
};

inline strongdeps::Repository random_repo(std::mt19937& rng,
                                          const RandomRepoOptions& opt = {}) {
    using namespace strongdeps;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> size_dist(opt.min_packages, opt.max_packages);

    const std::vector<std::string> versions = {"0.9", "1.0", "1.5-1", "2.0", "1:0.5"};
    const std::vector<std::string> features = {"feat0", "feat1", "feat2"};

    int n = size_dist(rng);
    std::vector<PackageId> ids;
    for (int i = 0; i < n; ++i) {
        PackageId id;
        if (i > 0 && coin(rng) < opt.duplicate_name_prob) {
            // second version of an existing name
            const PackageId& base = ids[std::uniform_int_distribution<int>(0, i - 1)(rng)];
            id.name = base.name;
            do {
                id.version = versions[std::uniform_int_distribution<std::size_t>(
                    0, versions.size() - 1)(rng)];
            } while (id.version == base.version);
        } else {
            id.name = "pkg" + std::to_string(i);
            id.version = versions[std::uniform_int_distribution<std::size_t>(
                0, versions.size() - 1)(rng)];
        }
        ids.push_back(id);
    }

    auto random_predicate = [&]() {
        PackagePredicate pred;
        double roll = coin(rng);
        if (roll < opt.missing_target_prob) {
            pred.target = "ghost" + std::to_string(
                std::uniform_int_distribution<int>(0, 2)(rng));
            return pred;
        }
        if (roll < opt.missing_target_prob + 0.15) {
            pred.target = features[std::uniform_int_distribution<std::size_t>(
                0, features.size() - 1)(rng)];
            return pred;
        }
        const PackageId& target =
            ids[std::uniform_int_distribution<int>(0, n - 1)(rng)];
        pred.target = target.name;
        if (coin(rng) < opt.constraint_prob) {
            Relation rels[] = {Relation::StrictlyEarlier, Relation::EarlierEqual,
                               Relation::Exactly, Relation::LaterEqual,
                               Relation::StrictlyLater};
            pred.constraint = VersionConstraint{
                rels[std::uniform_int_distribution<int>(0, 4)(rng)],
                versions[std::uniform_int_distribution<std::size_t>(
                    0, versions.size() - 1)(rng)]};
        }
        return pred;
    };

    Repository repo;
    for (int i = 0; i < n; ++i) {
        Package pkg;
        pkg.id = ids[i];
        int clauses = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int c = 0; c < clauses; ++c) {
            Clause clause{random_predicate()};
            if (coin(rng) < opt.disjunction_prob) clause.push_back(random_predicate());
            pkg.depends.clauses.push_back(std::move(clause));
        }
        if (coin(rng) < opt.conflict_prob) pkg.conflicts.push_back(random_predicate());
        if (coin(rng) < opt.provides_prob)
            pkg.provides.push_back(features[std::uniform_int_distribution<std::size_t>(
                0, features.size() - 1)(rng)]);
        repo.add(std::move(pkg));
    }
    return repo;
}

}  // namespace testsupport
