"""Aggregate statistics over a partition and calibration against nulls.

The headline statistic sums each final bin's chi contribution
``(o - e)^2 / e``; its distribution depends on the split rule and stop
criteria, so significance comes from a simulated null table: independent
rank permutations binned under the same configuration, recorded as
(depth limit, bin count, statistic) triples.  Observed statistics are then
placed by add-one empirical tail proportions among null entries with a
comparable bin count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bins import Binning, StopConfig
from .engine import bin_pair_by_depth
from .ranks import RankedPair


def chi2_statistic(binning: Binning) -> tuple[float, int]:
    """Chi-squared statistic over the final bins and the bin count."""
    total = 0.0
    for b in binning.bins:
        if b.expected == 0:
            raise RuntimeError("bin with zero expected count")
        d = b.observed - b.expected
        total += d * d / b.expected
    return total, binning.n_bin


def mi_statistic(binning: Binning) -> float:
    """Plug-in mutual information of the partition, with 0*log(0) = 0."""
    n = binning.n
    total = 0.0
    for b in binning.bins:
        o = b.observed
        if o > 0:
            total += (o / n) * np.log(o / b.expected)
    return total


def pearson_residuals(binning: Binning) -> np.ndarray:
    """Signed square roots of the per-bin chi contributions, in bin order."""
    out = np.empty(binning.n_bin)
    for i, b in enumerate(binning.bins):
        d = b.observed - b.expected
        out[i] = np.sign(d) * np.sqrt(d * d / b.expected)
    return out


@dataclass(frozen=True)
class NullTable:
    """Simulated (depth limit, n_bin, chi2) triples for one configuration.

    ``config`` records how the simulations were produced (score kind, stop
    settings, split floor z); tables loaded from bare CSV carry None and
    cannot be checked for configuration mismatches.
    """

    n: int
    depths: np.ndarray
    n_bins: np.ndarray
    chi2s: np.ndarray
    config: dict | None = None

    def __post_init__(self):
        if not (self.depths.size == self.n_bins.size == self.chi2s.size):
            raise ValueError("entry columns must have equal length")
        if self.depths.size and (self.n_bins.min() < 1 or self.chi2s.min() < 0):
            raise ValueError("entries require n_bin >= 1 and chi2 >= 0")

    @property
    def size(self) -> int:
        return int(self.depths.size)

    def to_csv(self, path) -> None:
        Path(path).write_text(self.to_csv_text())

    def to_csv_text(self) -> str:
        lines = ["depth,n_bin,chi2"]
        for d, nb, c in zip(self.depths, self.n_bins, self.chi2s):
            lines.append(f"{int(d)},{int(nb)},{format(float(c), '.17g')}")
        return "\n".join(lines) + "\n"

    def to_json(self, path) -> None:
        doc = {
            "n": self.n,
            "config": self.config,
            "entries": [
                [int(d), int(nb), float(c)]
                for d, nb, c in zip(self.depths, self.n_bins, self.chi2s)
            ],
        }
        Path(path).write_text(json.dumps(doc))

    @classmethod
    def from_csv(cls, path, n: int = 0) -> "NullTable":
        text = Path(path).read_text()
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != "depth,n_bin,chi2":
            raise ValueError(f"{path}: expected header 'depth,n_bin,chi2'")
        rows = [ln.split(",") for ln in lines[1:]]
        depths = np.array([int(r[0]) for r in rows], dtype=np.int64)
        n_bins = np.array([int(r[1]) for r in rows], dtype=np.int64)
        chi2s = np.array([float(r[2]) for r in rows])
        return cls(n=n, depths=depths, n_bins=n_bins, chi2s=chi2s, config=None)

    @classmethod
    def from_json(cls, path) -> "NullTable":
        doc = json.loads(Path(path).read_text())
        entries = np.asarray(doc["entries"], dtype=float)
        if entries.size == 0:
            entries = entries.reshape(0, 3)
        return cls(
            n=int(doc["n"]),
            depths=entries[:, 0].astype(np.int64),
            n_bins=entries[:, 1].astype(np.int64),
            chi2s=entries[:, 2],
            config=doc.get("config"),
        )


def _null_replicate(args) -> list[tuple[int, int, float]]:
    n, depths, kind, stop, z, seed, rep = args
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, rep)))
    s = rng.permutation(n) + 1
    t = rng.permutation(n) + 1
    bin_seed = int(rng.integers(0, 2**63))
    pair = RankedPair(s=s, t=t, n=n)
    binned = bin_pair_by_depth(pair, kind, depths, stop, z=z, seed=bin_seed)
    out = []
    for d in sorted(binned):
        chi2, n_bin = chi2_statistic(binned[d])
        out.append((d, n_bin, chi2))
    return out


def simulate_null(
    n: int,
    depths,
    kind: str,
    stop: StopConfig,
    z: float = 5.0,
    n_sim: int = 1000,
    seed: int = 0,
    workers: int = 1,
) -> NullTable:
    """Simulate the null distribution of the statistic by rank shuffling.

    Each replicate draws two independent uniform permutations of 1..n and
    bins them once per requested depth limit under the given configuration.
    Replicate ``r`` derives all of its randomness from the seed material
    ``(seed, r)``, so the table is reproducible and independent of worker
    count; entries are ordered by replicate then depth.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n_sim < 1:
        raise ValueError("n_sim must be >= 1")
    depths = sorted(set(int(d) for d in depths))
    jobs = [(n, depths, kind, stop, z, seed, rep) for rep in range(n_sim)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, n_sim // (8 * workers))
            results = list(pool.map(_null_replicate, jobs, chunksize=chunk))
    else:
        results = [_null_replicate(j) for j in jobs]
    rows = [row for rep_rows in results for row in rep_rows]
    config = {
        "kind": kind,
        "depths": depths,
        "min_expected": stop.min_expected,
        "stop_empty": stop.stop_empty,
        "z": z,
        "seed": seed,
    }
    return NullTable(
        n=n,
        depths=np.array([r[0] for r in rows], dtype=np.int64),
        n_bins=np.array([r[1] for r in rows], dtype=np.int64),
        chi2s=np.array([r[2] for r in rows]),
        config=config,
    )


def empirical_p(
    null: NullTable, observed: tuple[int, float], window: int = 2
) -> float:
    """Add-one empirical p-value of an observed (n_bin, chi2) pair.

    Null entries whose bin count lies within ``window`` of the observed one
    form the reference set.  If the window captures nothing it widens
    symmetrically until it holds at least 100 entries or spans the table.
    """
    if null.size == 0:
        raise ValueError("empty null table")
    obs_nb, obs_chi2 = int(observed[0]), float(observed[1])
    gap = np.abs(null.n_bins - obs_nb)
    in_win = gap <= window
    if not in_win.any():
        w = window
        max_gap = int(gap.max())
        while w < max_gap and int(in_win.sum()) < 100:
            w += 1
            in_win = gap <= w
    n_ref = int(in_win.sum())
    n_ge = int(np.count_nonzero(null.chi2s[in_win] >= obs_chi2))
    return (1 + n_ge) / (1 + n_ref)


def empirical_quantile(values, q: float) -> float:
    """Linear-interpolation empirical quantile of a sample."""
    return float(np.quantile(np.asarray(values, dtype=float), q))


def null_quantile_curve(
    null: NullTable, q: float, window: int = 2, min_count: int = 50
) -> dict[int, float]:
    """Empirical q-quantile of chi2 per observed bin count, made monotone.

    Each distinct bin count pools entries within ``window`` of itself,
    widening until the pool holds ``min_count`` entries; the resulting
    values are rearranged into non-decreasing order over increasing bin
    count.  Raises ``ValueError`` if even the whole table is too small.
    """
    if not 0 < q < 1:
        raise ValueError("q must lie strictly between 0 and 1")
    if null.size < min_count:
        raise ValueError(
            f"null table has {null.size} entries, fewer than min_count={min_count}"
        )
    levels = np.unique(null.n_bins)
    raw = []
    for nb in levels:
        gap = np.abs(null.n_bins - nb)
        w = window
        sel = gap <= w
        max_gap = int(gap.max())
        while int(sel.sum()) < min_count and w < max_gap:
            w += 1
            sel = gap <= w
        raw.append(empirical_quantile(null.chi2s[sel], q))
    monotone = np.sort(np.asarray(raw))
    return {int(nb): float(v) for nb, v in zip(levels, monotone)}
