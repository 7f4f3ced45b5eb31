"""Bin data model, stop criteria, and partition serialization.

A bin is a half-open axis-aligned rectangle ``(lower_s, upper_s] x
(lower_t, upper_t]`` in rank space, carrying the member points that fall in
it, its expected count under independence (area / n) and its depth (number
of binary splits from the root).  The half-open convention means a point
whose coordinate equals a split line lands in the lower bin; rank
coordinates start at 1, so the root's lower bound 0 is never occupied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ranks import RankedPair

SCORE_KINDS = ("chi", "mi", "random")


@dataclass(frozen=True, eq=False)
class Bin:
    """One rectangular rank-space region with its member points."""

    lower_s: int
    upper_s: int
    lower_t: int
    upper_t: int
    points_s: np.ndarray
    points_t: np.ndarray
    expected: float
    depth: int

    @property
    def observed(self) -> int:
        return int(self.points_s.size)

    @property
    def side_s(self) -> int:
        return self.upper_s - self.lower_s

    @property
    def side_t(self) -> int:
        return self.upper_t - self.lower_t

    @property
    def area(self) -> int:
        return self.side_s * self.side_t

    def validate(self, n: int) -> None:
        """Check every structural invariant; raises AssertionError on failure."""
        assert self.lower_s < self.upper_s and self.lower_t < self.upper_t
        assert self.depth >= 0 and self.expected >= 0
        assert self.points_s.size == self.points_t.size
        assert np.all((self.points_s > self.lower_s) & (self.points_s <= self.upper_s))
        assert np.all((self.points_t > self.lower_t) & (self.points_t <= self.upper_t))
        assert math.isclose(self.expected, self.area / n, rel_tol=1e-12)


@dataclass(frozen=True)
class StopConfig:
    """Disjunction of criteria below which a bin is frozen instead of split."""

    max_depth: int
    min_expected: float = 10.0
    stop_empty: bool = True

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.min_expected < 0:
            raise ValueError("min_expected must be >= 0")


def should_stop(b: Bin, cfg: StopConfig) -> bool:
    """True when any stop criterion holds for the bin."""
    return (
        b.depth >= cfg.max_depth
        or b.expected <= cfg.min_expected
        or (cfg.stop_empty and b.observed == 0)
    )


def root_bin(pair: RankedPair) -> Bin:
    """The initial bin (0, n] x (0, n] holding every observation."""
    n = pair.n
    return Bin(
        lower_s=0,
        upper_s=n,
        lower_t=0,
        upper_t=n,
        points_s=pair.s,
        points_t=pair.t,
        expected=float(n),
        depth=0,
    )


@dataclass(frozen=True)
class Binning:
    """A finished partition of rank space plus the provenance that made it."""

    bins: list[Bin] = field(repr=False)
    score_kind: str
    stop: StopConfig
    min_split_expected: float
    seed: int
    n: int

    def __post_init__(self):
        if self.score_kind not in SCORE_KINDS:
            raise ValueError(f"score_kind must be one of {SCORE_KINDS}")

    @property
    def n_bin(self) -> int:
        return len(self.bins)


def _fmt_real(x: float) -> str:
    # 17 significant digits round-trips any IEEE double.
    return format(float(x), ".17g")


def binning_to_json(binning: Binning) -> str:
    """Serialize a Binning to its canonical JSON document.

    The field order is fixed and reals carry 17 significant digits, so equal
    binnings serialize to byte-identical documents.
    """
    stop = binning.stop
    head = (
        f'{{"n":{binning.n},'
        f'"score_kind":"{binning.score_kind}",'
        f'"seed":{binning.seed},'
        f'"stop":{{"max_depth":{stop.max_depth},'
        f'"min_expected":{_fmt_real(stop.min_expected)},'
        f'"stop_empty":{"true" if stop.stop_empty else "false"}}},'
        f'"bins":['
    )
    parts = []
    for b in binning.bins:
        ps = ",".join(str(int(v)) for v in b.points_s)
        pt = ",".join(str(int(v)) for v in b.points_t)
        parts.append(
            f'{{"ls":{b.lower_s},"us":{b.upper_s},'
            f'"lt":{b.lower_t},"ut":{b.upper_t},'
            f'"depth":{b.depth},'
            f'"expected":{_fmt_real(b.expected)},'
            f'"observed":{b.observed},'
            f'"points_s":[{ps}],"points_t":[{pt}]}}'
        )
    return head + ",".join(parts) + "]}"
