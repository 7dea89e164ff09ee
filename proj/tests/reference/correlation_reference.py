#!/usr/bin/env python3
"""Computes the expected CorrelationStats values for the hand-built
sensitivity records used in the C++ unit tests, using scipy/numpy as an
independent reference. Population standard deviations (ddof=0)."""

import numpy as np
from scipy import stats

# (direct, strong) per package; mirrors the fixture in test_analysis.cpp
records = [
    (0, 0),
    (1, 3),
    (2, 3),
    (5, 11),
    (4, 4),
]

direct = np.array([d for d, s in records], dtype=float)
strong = np.array([s for d, s in records], dtype=float)
delta = strong - direct

rho, _ = stats.spearmanr(direct, strong)
r, _ = stats.pearsonr(direct, strong)

print(f"spearman_rho = {rho:.17g}")
print(f"pearson_r    = {r:.17g}")
for name, col in (("direct", direct), ("strong", strong), ("delta", delta)):
    print(f"{name}: mean = {col.mean():.17g}  sigma = {col.std(ddof=0):.17g}")

mu, sd = delta.mean(), delta.std(ddof=0)
for k in (1, 2, 3):
    pct = 100.0 * np.mean(np.abs(delta - mu) <= k * sd)
    print(f"within_{k}_sigma = {pct:.17g}")
