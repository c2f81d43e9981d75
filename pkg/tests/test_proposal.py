import numpy as np
import pytest

from lpsubsel import (InputError, MixtureWeights, ParameterError, PointSet,
                      SubsetBasis, as_source, draw_mixture_pool, extend_basis,
                      iterate_once, open_unit, reservoir_draw_iid, tv_distance)

SIX_POINTS = np.array([[2.0, 0.0], [0.0, 1.0], [1.0, 1.0],
                       [3.0, 4.0], [0.0, 0.0], [-2.0, 1.0]])


def _stream(rows):
    return iter(np.asarray(rows, dtype=np.float64))


def test_open_unit_stays_inside_the_interval():
    rng = np.random.default_rng(0)
    u = open_unit(rng, 10000)
    assert u.min() > 0.0 and u.max() < 1.0


def test_mixture_masses_equal_norms():
    X = PointSet(np.array([[1.0, 0.0], [0.0, 1.0]]))
    q = MixtureWeights(p=2.0).masses(X)
    np.testing.assert_allclose(q, [0.5, 0.5])


def test_mixture_masses_three_to_one():
    # ||x1||^p = 3, ||x2||^p = 1 at p=2
    X = PointSet(np.array([[np.sqrt(3.0), 0.0], [0.0, 1.0]]))
    q = MixtureWeights(p=2.0).masses(X)
    assert q[0] == pytest.approx(0.625)
    assert q[1] == pytest.approx(0.375)


def test_mixture_floor_covers_zero_vector():
    X = PointSet(np.vstack([SIX_POINTS, [0.0, 0.0]]))
    q = MixtureWeights(p=2.0).masses(X)
    assert (q >= 1.0 / (2 * X.n) - 1e-15).all()
    assert q.sum() == pytest.approx(1.0, abs=1e-12)


def test_mixture_with_pivot_subset():
    X = PointSet(np.array([[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]))
    pivot = extend_basis(SubsetBasis.empty(2), 0, X)
    q = MixtureWeights(p=2.0, pivot=pivot).masses(X)
    # distances to span(e1): 0, 2, 1 -> squared weights 0, 4, 1
    np.testing.assert_allclose(q, [1 / 6, 0.5 * 4 / 5 + 1 / 6, 0.5 / 5 + 1 / 6])


def test_mixture_undefined_when_pivot_spans_data():
    X = PointSet(np.array([[1.0, 0.0], [2.0, 0.0]]))
    pivot = extend_basis(SubsetBasis.empty(2), 0, X)
    with pytest.raises(InputError):
        MixtureWeights(p=2.0, pivot=pivot).masses(X)


def test_reservoir_uniform_weights():
    rows = np.eye(4)
    rng = np.random.default_rng(1)
    draws = reservoir_draw_iid(_stream(rows), lambda x: 1.0, 100_000, rng)
    freq = np.zeros(4)
    for point, _ in draws:
        freq[int(np.argmax(point))] += 1
    freq /= len(draws)
    np.testing.assert_allclose(freq, 0.25, atol=0.01)


def test_reservoir_three_to_one_weights():
    rows = np.array([[1.0, 0.0], [0.0, 1.0]])
    rng = np.random.default_rng(2)
    draws = reservoir_draw_iid(_stream(rows), lambda x: 3.0 if x[0] else 1.0,
                               100_000, rng)
    share = sum(1 for point, _ in draws if point[0]) / len(draws)
    assert share == pytest.approx(0.75, abs=0.01)


def test_reservoir_norm_power_weights_match_exact_normalization():
    # oracle: exact normalization of the same six weights
    p = 2.0
    weights = np.linalg.norm(SIX_POINTS, axis=1) ** p
    exact = weights / weights.sum()
    rng = np.random.default_rng(3)
    draws = reservoir_draw_iid(_stream(SIX_POINTS),
                               lambda x: float(np.linalg.norm(x)) ** p,
                               100_000, rng)
    counts = np.zeros(len(SIX_POINTS))
    lookup = {tuple(row): i for i, row in enumerate(SIX_POINTS)}
    for point, _ in draws:
        counts[lookup[tuple(point)]] += 1
    assert tv_distance(counts / counts.sum(), exact) <= 0.02


def test_reservoir_errors():
    rng = np.random.default_rng(4)
    with pytest.raises(InputError):
        reservoir_draw_iid(_stream(np.empty((0, 2))), lambda x: 1.0, 3, rng)
    with pytest.raises(InputError):
        reservoir_draw_iid(_stream(np.ones((3, 2))), lambda x: 0.0, 3, rng)
    with pytest.raises(InputError):
        reservoir_draw_iid(_stream(np.ones((3, 2))), lambda x: -1.0, 3, rng)
    with pytest.raises(ParameterError):
        reservoir_draw_iid(_stream(np.ones((3, 2))), lambda x: 1.0, 0, rng)


def test_pool_uniform_for_equal_norm_points():
    rows = np.array([[1.0, 0.0], [0.0, 1.0]])
    pool = draw_mixture_pool(_stream(rows), 2.0, 50_000, np.random.default_rng(5))
    share = float(np.mean(pool.indices == 0))
    assert share == pytest.approx(0.5, abs=0.015)
    np.testing.assert_allclose(pool.qmass, 0.5)


def test_pool_qmass_floor_and_zero_vector_reachable():
    pool = draw_mixture_pool(_stream(SIX_POINTS), 2.0, 50_000,
                             np.random.default_rng(6))
    n = len(SIX_POINTS)
    assert pool.qmass.min() >= 1.0 / (2 * n) - 1e-15
    zero_idx = 4
    assert (pool.indices == zero_idx).any()
    assert pool.qmass[pool.indices == zero_idx].max() == pytest.approx(1.0 / (2 * n))


def test_pool_matches_exact_mixture_small_n():
    p = 2.0
    X = PointSet(SIX_POINTS)
    exact = MixtureWeights(p=p).masses(X)
    pool = draw_mixture_pool(_stream(SIX_POINTS), p, 100_000,
                             np.random.default_rng(7))
    counts = np.bincount(pool.indices, minlength=X.n).astype(float)
    freq = counts / counts.sum()
    assert tv_distance(freq, exact) <= 0.02
    # chi-square sanity at 3 sigma
    expected = exact * pool.size
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    df = X.n - 1
    assert chi2 <= df + 3.0 * np.sqrt(2.0 * df)


def test_pool_consumes_exactly_one_selection_pass():
    src = as_source(SIX_POINTS)
    draw_mixture_pool(iterate_once(src, "selection"), 2.0, 1234,
                      np.random.default_rng(8))
    assert src.auditor.selection_passes == 1


def test_pool_deterministic_for_fixed_seed():
    a = draw_mixture_pool(_stream(SIX_POINTS), 1.5, 500, np.random.default_rng(9))
    b = draw_mixture_pool(_stream(SIX_POINTS), 1.5, 500, np.random.default_rng(9))
    np.testing.assert_array_equal(a.indices, b.indices)
    np.testing.assert_array_equal(a.points, b.points)
    np.testing.assert_array_equal(a.qmass, b.qmass)


def test_pool_rejects_degenerate_inputs():
    rng = np.random.default_rng(10)
    with pytest.raises(ParameterError):
        draw_mixture_pool(_stream(SIX_POINTS), 2.0, 0, rng)
    with pytest.raises(InputError):
        draw_mixture_pool(_stream(np.empty((0, 2))), 2.0, 4, rng)
    with pytest.raises(InputError):
        draw_mixture_pool(_stream(np.zeros((3, 2))), 2.0, 4, rng)


def test_pool_slot_triples():
    pool = draw_mixture_pool(_stream(SIX_POINTS), 2.0, 16, np.random.default_rng(11))
    point, index, qmass = pool[3]
    assert point.shape == (2,)
    assert 0 <= index < len(SIX_POINTS)
    assert 1.0 / 12 - 1e-15 <= qmass <= 1.0
    assert len(pool) == 16
