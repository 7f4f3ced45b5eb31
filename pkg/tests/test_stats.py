import numpy as np
import pytest

from rankbin import (
    Bin,
    NullTable,
    StopConfig,
    bin_pair,
    chi2_statistic,
    empirical_p,
    mi_statistic,
    null_quantile_curve,
    pearson_residuals,
    simulate_null,
)
from rankbin.bins import Binning
from rankbin.ranks import RankedPair
from rankbin.stats import empirical_quantile


def _toy_binning(bins, n):
    return Binning(bins=bins, score_kind="chi", stop=StopConfig(max_depth=6),
                   min_split_expected=5.0, seed=0, n=n)


def mk_bin(expected, observed, n):
    pts = np.arange(1, observed + 1)
    return Bin(0, n, 0, n, pts, pts, float(expected), 0)


def test_chi2_zero_when_all_observed_match_expected():
    b = _toy_binning([mk_bin(5, 5, 10), mk_bin(5, 5, 10)], 10)
    chi2, n_bin = chi2_statistic(b)
    assert chi2 == 0.0 and n_bin == 2


def test_chi2_two_bin_example():
    b = _toy_binning([mk_bin(5, 7, 10), mk_bin(5, 3, 10)], 10)
    chi2, n_bin = chi2_statistic(b)
    assert chi2 == pytest.approx(1.6)
    assert n_bin == 2


def test_mi_examples():
    assert mi_statistic(_toy_binning([mk_bin(5, 5, 10)], 10)) == 0.0
    single = _toy_binning([mk_bin(10, 10, 10)], 10)
    assert mi_statistic(single) == 0.0
    two = _toy_binning([mk_bin(5, 7, 10), mk_bin(5, 3, 10)], 10)
    expect = 0.7 * np.log(1.4) + 0.3 * np.log(0.6)
    assert mi_statistic(two) == pytest.approx(expect)
    assert mi_statistic(two) == pytest.approx(0.08228, abs=1e-5)


def test_pearson_residual_examples():
    b = _toy_binning([mk_bin(5, 7, 10), mk_bin(5, 3, 10), mk_bin(5, 5, 10)], 10)
    r = pearson_residuals(b)
    assert r[0] == pytest.approx(0.8944, abs=1e-4)
    assert r[1] == pytest.approx(-0.8944, abs=1e-4)
    assert r[2] == 0.0


def test_squared_residuals_sum_to_chi2():
    rng = np.random.default_rng(0)
    pair = RankedPair(s=rng.permutation(800) + 1, t=rng.permutation(800) + 1, n=800)
    binning = bin_pair(pair, "chi", StopConfig(max_depth=7), 5.0, seed=1)
    chi2, _ = chi2_statistic(binning)
    r = pearson_residuals(binning)
    assert float(np.sum(r * r)) == pytest.approx(chi2, rel=1e-12)


def test_simulate_null_count_contract():
    table = simulate_null(100, [2], "chi", StopConfig(max_depth=2),
                          z=5.0, n_sim=100, seed=0)
    assert table.size == 100
    assert np.all(table.depths == 2)
    assert np.all(table.n_bins >= 1)
    assert np.all(table.chi2s >= 0)


def test_simulate_null_reproducible_and_worker_independent():
    kw = dict(n=120, depths=[2, 4], kind="random",
              stop=StopConfig(max_depth=4), z=5.0, n_sim=24, seed=9)
    a = simulate_null(**kw, workers=1)
    b = simulate_null(**kw, workers=1)
    c = simulate_null(**kw, workers=4)
    for other in (b, c):
        assert np.array_equal(a.depths, other.depths)
        assert np.array_equal(a.n_bins, other.n_bins)
        assert np.array_equal(a.chi2s, other.chi2s)


def _table(n_bins, chi2s, depths=None):
    n_bins = np.asarray(n_bins, dtype=np.int64)
    if depths is None:
        depths = np.full(n_bins.size, 2, dtype=np.int64)
    return NullTable(n=100, depths=np.asarray(depths, dtype=np.int64),
                     n_bins=n_bins, chi2s=np.asarray(chi2s, dtype=float))


def test_empirical_p_add_one_bound():
    rng = np.random.default_rng(1)
    table = _table(np.full(9999, 40), rng.uniform(0, 50, 9999))
    p = empirical_p(table, (40, 1e9), window=2)
    assert p == pytest.approx(1 / 10_000)


def test_empirical_p_is_one_for_zero_statistic():
    table = _table(np.full(50, 10), np.linspace(0.5, 30, 50))
    assert empirical_p(table, (10, 0.0), window=2) == 1.0


def test_empirical_p_widens_until_populated():
    # observed n_bin far outside the table: the window must widen and the
    # result stay a valid probability
    table = _table(np.arange(200, 400),
                   np.linspace(1, 10, 200))
    p = empirical_p(table, (10, 5.0), window=2)
    assert 0 < p <= 1


def test_empirical_p_monotone_in_observed_statistic():
    rng = np.random.default_rng(3)
    table = _table(np.full(500, 25), rng.chisquare(24, 500))
    ps = [empirical_p(table, (25, c), window=2) for c in np.linspace(0, 80, 40)]
    assert all(a >= b for a, b in zip(ps, ps[1:]))


def test_empirical_p_empty_table_rejected():
    table = _table([], [])
    with pytest.raises(ValueError):
        empirical_p(table, (10, 1.0))


def test_empirical_quantile_median_example():
    assert empirical_quantile([1.0, 2.0, 3.0], 0.5) == 2.0


def test_quantile_curve_ordering_in_q():
    rng = np.random.default_rng(7)
    n_bins = rng.integers(20, 40, size=2000)
    chi2s = rng.chisquare(n_bins - 1)
    table = _table(n_bins, chi2s)
    q95 = null_quantile_curve(table, 0.95)
    q99 = null_quantile_curve(table, 0.99)
    assert set(q95) == set(q99)
    for nb in q95:
        assert q99[nb] > q95[nb]
    # monotone in n_bin by construction
    vals = [q99[nb] for nb in sorted(q99)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_quantile_curve_insufficient_data():
    table = _table(np.full(10, 5), np.linspace(1, 5, 10))
    with pytest.raises(ValueError):
        null_quantile_curve(table, 0.95, min_count=50)
    with pytest.raises(ValueError):
        null_quantile_curve(_table(np.full(60, 5), np.ones(60)), 0.0)


def test_null_table_csv_round_trip(tmp_path):
    table = simulate_null(60, [2, 3], "chi", StopConfig(max_depth=3),
                          z=5.0, n_sim=5, seed=4)
    path = tmp_path / "null.csv"
    table.to_csv(path)
    text = path.read_text()
    assert text.splitlines()[0] == "depth,n_bin,chi2"
    back = NullTable.from_csv(path)
    assert back.config is None
    assert np.array_equal(back.depths, table.depths)
    assert np.array_equal(back.n_bins, table.n_bins)
    assert np.array_equal(back.chi2s, table.chi2s)


def test_null_table_json_round_trip(tmp_path):
    table = simulate_null(60, [2], "random", StopConfig(max_depth=2),
                          z=5.0, n_sim=5, seed=4)
    path = tmp_path / "null.json"
    table.to_json(path)
    back = NullTable.from_json(path)
    assert back.config == table.config
    assert back.n == 60
    assert np.array_equal(back.chi2s, table.chi2s)
