"""Independent oracles shared across tests.

Everything here recomputes quantities from scratch (per-candidate counting,
direct two-child evaluation) so that library results are checked against a
second, structurally different implementation.
"""

from __future__ import annotations

import numpy as np


def chi_cell(o: float, e: float) -> float:
    return (o - e) ** 2 / e


def two_child_sum(kind: str, o1: int, e1: float, o2: int, e2: float, z: float) -> float:
    """Direct two-child score with the size gate; no recurrence."""
    if e1 < z or e2 < z or e1 <= 0 or e2 <= 0:
        return 0.0
    if kind == "chi":
        return chi_cell(o1, e1) + chi_cell(o2, e2)
    o = o1 + o2
    t1 = (o1 / o) * np.log(o1 / e1) if o1 > 0 else 0.0
    t2 = (o2 / o) * np.log(o2 / e2) if o2 > 0 else 0.0
    return t1 + t2


def brute_force_scores(kind, w, e, z):
    """Score every interior candidate of w by direct counting.

    The member coordinates are w[2:-1]; each candidate splits at w[i] with
    the members at the split line counted below.
    """
    w = np.asarray(w, dtype=float)
    members = w[2:-1]
    density = e / (w[-1] - w[0])
    out = []
    for c in w[1:-1]:
        e1 = (c - w[0]) * density
        o1 = int(np.count_nonzero(members <= c))
        o2 = members.size - o1
        out.append(two_child_sum(kind, o1, e1, o2, e - e1, z))
    return np.array(out)


def random_bin_setup(rng, min_pts=5, max_pts=200):
    """Random margin geometry: (lower, upper, sorted coords, expected)."""
    lower = int(rng.integers(0, 1000))
    side = int(rng.integers(10, 3000))
    upper = lower + side
    o = min(int(rng.integers(min_pts, max_pts + 1)), side)
    coords = np.sort(rng.choice(np.arange(lower + 1, upper + 1), size=o, replace=False))
    e = float(rng.uniform(10.0, max(20.0, 3.0 * o)))
    return lower, upper, coords, e
