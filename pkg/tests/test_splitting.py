import numpy as np
import pytest

from rankbin import (
    Bin,
    StopConfig,
    UnsplittableBinError,
    max_score_split,
    root_bin,
    split_at,
)
from rankbin.ranks import RankedPair


def mk_bin(ls, us, lt, ut, pts_s, pts_t, expected, depth=0):
    return Bin(ls, us, lt, ut, np.asarray(pts_s, dtype=np.int64),
               np.asarray(pts_t, dtype=np.int64), float(expected), depth)


def _pair(n, seed=0):
    rng = np.random.default_rng(seed)
    return RankedPair(s=rng.permutation(n) + 1, t=rng.permutation(n) + 1, n=n)


def test_split_at_proportional_expected():
    b = mk_bin(0, 10, 0, 10, [2, 5, 8], [3, 6, 9], 10.0)
    lo, hi = split_at(b, "s", 4)
    assert (lo.lower_s, lo.upper_s) == (0, 4)
    assert (hi.lower_s, hi.upper_s) == (4, 10)
    assert lo.expected == 4.0 and hi.expected == 6.0
    assert lo.lower_t == hi.lower_t == 0 and lo.upper_t == hi.upper_t == 10
    assert lo.depth == hi.depth == 1


def test_split_at_boundary_point_goes_to_lower_child():
    b = mk_bin(0, 10, 0, 10, [4, 7], [1, 2], 10.0)
    lo, hi = split_at(b, "s", 4)
    assert lo.points_s.tolist() == [4]
    assert hi.points_s.tolist() == [7]


def test_split_at_conserves_points_and_area():
    rng = np.random.default_rng(5)
    s = rng.choice(np.arange(1, 51), size=20, replace=False)
    t = rng.choice(np.arange(1, 51), size=20, replace=False)
    b = mk_bin(0, 50, 0, 50, np.sort(s), t[np.argsort(s)], 25.0)
    lo, hi = split_at(b, "t", 30)
    assert lo.observed + hi.observed == b.observed
    assert lo.area + hi.area == b.area
    assert lo.expected + hi.expected == pytest.approx(b.expected)
    merged = np.sort(np.concatenate([lo.points_s, hi.points_s]))
    assert np.array_equal(merged, np.sort(b.points_s))


def test_split_at_rejects_out_of_range_coordinates():
    b = mk_bin(3, 8, 0, 10, [5], [5], 5.0)
    for bad in (3, 8, 2, 11):
        with pytest.raises(ValueError):
            split_at(b, "s", bad)
    with pytest.raises(ValueError):
        split_at(b, "x", 5)


def test_root_bin_halves_at_midpoint_on_random_margin():
    # degenerate case: every root-bin score ties, so the bin is halved at
    # ceiling(n/2); the margin choice is seed-dependent
    n = 1000
    margins = set()
    for seed in range(8):
        b = root_bin(_pair(n, seed=seed))
        rng = np.random.default_rng(seed)
        lo, hi = max_score_split(b, "chi", 5.0, rng)
        if lo.upper_s != n:
            margins.add("s")
            assert lo.upper_s == 500 and hi.lower_s == 500
        else:
            margins.add("t")
            assert lo.upper_t == 500 and hi.lower_t == 500
    assert margins == {"s", "t"}


def test_halving_coordinate_is_ceiling_of_midpoint():
    # bounds (3, 8] halve at ceiling(5.5) = 6; points on the diagonal of a
    # square bin tie every eligible score
    pts = [4, 5, 6, 7, 8]
    b = mk_bin(3, 8, 3, 8, pts, pts, 25.0)
    lo, hi = max_score_split(b, "chi", 0.0, np.random.default_rng(0))
    assert lo.upper_s == 6 or lo.upper_t == 6


def test_worked_example_splits_on_s_at_5():
    # s-candidates [0,1,2,5,10] score [1.11, 1.56, 2.0] (max 2.0 at coord 5);
    # t-candidates [0,3,4,6,10] score below 2.0 everywhere
    b = mk_bin(0, 10, 0, 10, [2, 5], [4, 6], 4.0)
    lo, hi = max_score_split(b, "chi", 0.0, np.random.default_rng(0))
    assert (lo.lower_s, lo.upper_s) == (0, 5)
    assert (hi.lower_s, hi.upper_s) == (5, 10)
    assert lo.observed == 2 and hi.observed == 0


def test_deterministic_for_chi_and_mi_off_tie_case():
    rng = np.random.default_rng(8)
    s = np.sort(rng.choice(np.arange(1, 101), size=30, replace=False))
    t = rng.choice(np.arange(1, 101), size=30, replace=False)
    b = mk_bin(0, 100, 0, 100, s, t, 40.0)
    for kind in ("chi", "mi"):
        first = max_score_split(b, kind, 5.0, np.random.default_rng(1))
        for seed in range(2, 6):
            again = max_score_split(b, kind, 5.0, np.random.default_rng(seed))
            assert again[0].upper_s == first[0].upper_s
            assert again[0].upper_t == first[0].upper_t


def test_children_satisfy_invariants_and_partition_parent():
    rng = np.random.default_rng(3)
    for kind in ("chi", "mi", "random"):
        for trial in range(20):
            n = 200
            s = np.sort(rng.choice(np.arange(1, n + 1), size=50, replace=False))
            t = rng.choice(np.arange(1, n + 1), size=50, replace=False)
            b = mk_bin(0, n, 0, n, s, t, n / 2, depth=1)
            lo, hi = max_score_split(b, kind, 5.0, np.random.default_rng(trial))
            assert lo.observed + hi.observed == b.observed
            assert lo.area + hi.area == b.area
            assert lo.depth == hi.depth == 2
            assert lo.expected + hi.expected == pytest.approx(b.expected)
            assert min(lo.expected, hi.expected) >= 5.0


def test_mi_negative_scores_do_not_select_gated_candidates():
    # a sparse bin whose eligible mi scores are all negative: the split must
    # still respect the size floor rather than jump to a gated zero
    b = mk_bin(0, 100, 0, 100, [1, 50], [40, 90], 15.0)
    lo, hi = max_score_split(b, "mi", 5.0, np.random.default_rng(0))
    assert min(lo.expected, hi.expected) >= 5.0


def test_line_square_bin_is_halved():
    # all points on the diagonal of a square bin: every eligible score ties,
    # so the bin halves instead of slicing at the first eligible candidate
    pts = np.arange(1, 501)
    b = mk_bin(0, 500, 0, 500, pts, pts, 250.0, depth=2)
    lo, hi = max_score_split(b, "chi", 5.0, np.random.default_rng(4))
    assert {lo.side_s * lo.side_t, hi.side_s * hi.side_t} == {500 * 250}


def test_empty_bin_is_invalid_state():
    b = mk_bin(0, 10, 0, 10, [], [], 10.0)
    with pytest.raises(RuntimeError):
        max_score_split(b, "chi", 5.0, np.random.default_rng(0))


def test_unknown_kind_rejected():
    b = mk_bin(0, 10, 0, 10, [5], [5], 10.0)
    with pytest.raises(ValueError):
        max_score_split(b, "quux", 5.0, np.random.default_rng(0))


def test_unsplittable_when_both_halvings_undercut_floor():
    # expected 10.05 on odd sides 21 and 93: either halving leaves the
    # smaller child below 5, and every candidate is gated
    pts_s = [3, 18]
    pts_t = [5, 88]
    b = mk_bin(0, 21, 0, 93, pts_s, pts_t, 10.05)
    with pytest.raises(UnsplittableBinError):
        max_score_split(b, "chi", 5.0, np.random.default_rng(0))


def test_degenerate_halving_prefers_margin_that_respects_floor():
    # s side 11 cannot halve (10.5 * 5/11 < 5) but the even t side can
    pts_s = [2, 9]
    pts_t = [100, 800]
    b = mk_bin(0, 11, 0, 966, pts_s, pts_t, 10.5)
    for seed in range(6):
        lo, hi = max_score_split(b, "chi", 5.0, np.random.default_rng(seed))
        assert min(lo.expected, hi.expected) >= 5.0
        assert lo.upper_t == 483  # halved on t
