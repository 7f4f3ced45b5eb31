"""Per-candidate split scores along one margin of a bin.

Candidate split coordinates for a margin are the sorted member coordinates
plus a pseudo-point one rank unit below the smallest member, which is what
lets a split carve off an empty child.  Scores are the post-split two-child
sums (the parent's own score is constant across candidates, so the argmax
is unchanged by dropping it).  A candidate producing a child with expected
count below ``z`` on either side is gated to a score of zero; zero-width
children (possible at both ends of the candidate vector) are gated
unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class CandidateVector:
    """Split candidates on one margin: [lower, pseudo, coords..., upper].

    ``w`` has length m = o + 3 for a bin with o member points.  Interior
    entries w[1..m-2] are the candidates; w[1] is the pseudo-point, which may
    coincide with the lower bound, and w[m-2] (the largest member coordinate)
    may coincide with the upper bound.  Both coincidences are zero-width
    splits and score zero.
    """

    w: np.ndarray
    e: float
    z: float = 5.0

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "w", w)
        if self.e <= 0:
            raise ValueError("expected count e must be > 0")
        if self.z < 0:
            raise ValueError("minimum split expected z must be >= 0")
        if w.ndim != 1 or w.size < 3:
            raise ValueError("candidate vector needs at least 3 entries")
        inner = w[1:-1]
        if inner.size > 1 and not np.all(np.diff(inner) > 0):
            raise ValueError("candidate coordinates must be strictly increasing")
        if not (w[0] <= w[1] and w[-2] <= w[-1]):
            raise ValueError("bounds must enclose the candidates")

    @property
    def m(self) -> int:
        return int(self.w.size)

    @property
    def total_observed(self) -> int:
        return self.m - 3


def child_expectations(cand: CandidateVector) -> np.ndarray:
    """Expected count of the lower child for each interior candidate."""
    w = cand.w
    density = cand.e / (w[-1] - w[0])
    return (w[1:-1] - w[0]) * density


def gate_mask(cand: CandidateVector) -> np.ndarray:
    """Size-gate indicator per candidate: both children wide enough.

    With z > 0 the gate also excludes zero-width children; with z == 0 an
    explicit positivity guard does, so no score ever divides by zero.
    """
    e_lo = child_expectations(cand)
    e_hi = cand.e - e_lo
    return (e_lo >= cand.z) & (e_hi >= cand.z) & (e_lo > 0) & (e_hi > 0)


def chi_scores(cand: CandidateVector) -> np.ndarray:
    """Two-child chi-squared sums for each candidate, gated by size."""
    e_lo = child_expectations(cand)
    e_hi = cand.e - e_lo
    o = cand.total_observed
    o_lo = np.arange(o + 1, dtype=float)
    ok = gate_mask(cand)
    scores = np.zeros(o + 1)
    lo, hi = e_lo[ok], e_hi[ok]
    olo = o_lo[ok]
    scores[ok] = (olo - lo) ** 2 / lo + (o - olo - hi) ** 2 / hi
    return scores


def mi_scores(cand: CandidateVector) -> np.ndarray:
    """Two-child divergence-from-uniformity sums for each candidate.

    Terms follow the convention 0*log(0/x) = 0.  Values may be negative:
    a bin holding fewer points than it expects has log-ratios below zero on
    both sides.
    """
    e_lo = child_expectations(cand)
    e_hi = cand.e - e_lo
    o = cand.total_observed
    o_lo = np.arange(o + 1, dtype=float)
    ok = gate_mask(cand)
    scores = np.zeros(o + 1)
    lo, hi = e_lo[ok], e_hi[ok]
    olo = o_lo[ok]
    ohi = o - olo
    term_lo = np.zeros(olo.size)
    term_hi = np.zeros(olo.size)
    pos = olo > 0
    term_lo[pos] = (olo[pos] / o) * np.log(olo[pos] / lo[pos])
    pos = ohi > 0
    term_hi[pos] = (ohi[pos] / o) * np.log(ohi[pos] / hi[pos])
    scores[ok] = term_lo + term_hi
    return scores


def rand_scores(cand: CandidateVector, rng: np.random.Generator) -> np.ndarray:
    """Uniform(0,1) draw per candidate times the size-gate indicator.

    One draw is consumed per candidate whether or not it is gated, so the
    stream position after a call depends only on the candidate count.
    """
    u = rng.random(cand.m - 2)
    return np.where(gate_mask(cand), u, 0.0)
