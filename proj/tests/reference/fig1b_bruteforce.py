#!/usr/bin/env python3
"""Brute-force check of the relative-dominance value for the Fig-1b-style
7-package repository used in the C++ tests: n=4 predecessors of q, q -> r,
k=1 extra predecessor of r. Enumerates all healthy installations, derives
the strong dependency relation from the definition, and evaluates the
relative dominance formula literally."""

from itertools import combinations

# package -> list of conjunctive deps (each a single-target clause)
deps = {
    "p1": ["q"], "p2": ["q"], "p3": ["q"], "p4": ["q"],
    "q": ["r"],
    "s1": ["r"],
    "r": [],
}
universe = sorted(deps)


def healthy(inst):
    return all(d in inst for p in inst for d in deps[p])


healthy_sets = [set(c) for k in range(len(universe) + 1)
                for c in combinations(universe, k) if healthy(set(c))]

installable = {p for p in universe if any(p in h for h in healthy_sets)}
sdep = {(p, q) for p in installable for q in universe if p != q
        and all(q in h for h in healthy_sets if p in h)}


def impact(p):
    return {q for q in universe if (q, p) in sdep} | {p}


def cons(p):
    return {q for q in universe if (p, q) in sdep} | {p}


def rel_dominance(p, q):
    assert (p, q) in sdep
    return 100.0 * len((impact(q) - cons(p)) - impact(p)) / len(impact(p))


print("strong deps:", sorted(sdep))
print("Is(q) =", sorted(impact("q")), " Is(r) =", sorted(impact("r")))
print("z(q, r) =", rel_dominance("q", "r"))
