import math

import numpy as np
import pytest

from lpsubsel import (ParameterError, PointSet, SamplerConfig, SubsetBasis,
                      acceptance_ratio, adaptive_distribution, as_source,
                      draw_mixture_pool, one_pass_adaptive_sample, open_unit,
                      random_walk, theorem_params, tv_distance)
from lpsubsel._kernels import pyfallback

from helpers import basis_from

SIX_POINTS = np.array([[2.0, 0.0], [0.0, 1.0], [1.0, 1.0],
                       [3.0, 4.0], [0.5, 0.5], [-2.0, 1.0]])


def _draw(point, index=0, qmass=0.25):
    return (np.asarray(point, dtype=np.float64), index, qmass)


# ---------------------------------------------------------------- parameters

def test_theorem_params_k2_p1():
    cfg = theorem_params(k=2, p=1.0, delta=0.5, t_override=5)
    assert cfg.epsilon == pytest.approx(0.125)
    assert cfg.epsilon1 == pytest.approx(0.125)
    assert cfg.m == 7  # ceil(1 + 4 ln 4)
    assert cfg.l == 2
    assert cfg.repetitions == 9  # ceil(4 ln 8)
    assert cfg.epsilon2 == pytest.approx(0.5 / (4 * 5 * 2))


def test_theorem_params_k1_p2():
    cfg = theorem_params(k=1, p=2.0, delta=0.5, t_override=3)
    assert cfg.epsilon1 == pytest.approx(0.03125)
    assert cfg.m == math.ceil(1 + 8 * math.log(1 / 0.25))


def test_theorem_params_default_t():
    cfg = theorem_params(k=1, p=1.0, delta=0.5)
    # ceil((k/eps)^(p+1) ln(2 + k/eps)) with k/eps = 8
    assert cfg.t == 148
    assert cfg.pool_size == cfg.repetitions * cfg.l * cfg.t * (cfg.m + 1)


def test_theorem_params_lemma_walk_length_diagnostic():
    cfg = theorem_params(k=2, p=1.0, delta=0.5, t_override=5)
    want = math.ceil(1 + (2 / cfg.epsilon1) * math.log(1 / cfg.epsilon2))
    assert cfg.lemma_min_walk_length == want
    assert cfg.meets_lemma_walk_length == (cfg.m >= want)
    assert not cfg.meets_lemma_walk_length  # the recipe's m is far smaller


def test_theorem_params_rejects_bad_delta():
    with pytest.raises(ParameterError):
        theorem_params(k=2, p=1.0, delta=0.0)
    with pytest.raises(ParameterError):
        theorem_params(k=2, p=1.0, delta=1.0)


def test_sampler_config_validation():
    good = dict(k=1, p=2.0, delta=0.5, epsilon=0.125, epsilon1=0.1,
                epsilon2=0.01, m=3, t=1, l=1, repetitions=1, seed=0)
    SamplerConfig(**good)
    for bad in (dict(epsilon=0.0), dict(epsilon1=1.0), dict(t=0),
                dict(repetitions=0), dict(seed=-1), dict(p=0.5), dict(k=0)):
        with pytest.raises(ParameterError):
            SamplerConfig(**{**good, **bad})
    # degenerate m=0 and l=0 are allowed for hand-built configs
    SamplerConfig(**{**good, "m": 0, "l": 0})


# ---------------------------------------------------------- acceptance ratio

def test_acceptance_ratio_self_proposal_is_one():
    basis = SubsetBasis.empty(2)
    x = _draw([1.0, 1.0])
    assert acceptance_ratio(x, x, basis, 2.0) == pytest.approx(1.0)


def test_acceptance_ratio_direct_value():
    basis = SubsetBasis.empty(2)
    x = _draw([1.0, 0.0], qmass=0.3)
    y = _draw([2.0, 0.0], qmass=0.3)
    # d(y)=2, d(x)=1, p=2, equal masses -> ratio 4
    assert acceptance_ratio(x, y, basis, 2.0) == pytest.approx(4.0)


def test_acceptance_ratio_zero_distance_conventions():
    basis = SubsetBasis.empty(2).extended(0, np.array([1.0, 0.0]))
    covered = _draw([3.0, 0.0])
    live = _draw([0.0, 1.0])
    assert acceptance_ratio(covered, live, basis, 2.0) == math.inf
    assert acceptance_ratio(covered, _draw([5.0, 0.0]), basis, 2.0) == pytest.approx(1.0)
    assert acceptance_ratio(live, covered, basis, 2.0) == pytest.approx(0.0)


# ------------------------------------------------------------------- walks

def test_random_walk_zero_steps_returns_start():
    start = _draw([1.0, 2.0], index=3)
    out = random_walk([start], SubsetBasis.empty(2), 2.0, np.random.default_rng(0))
    assert out[1] == 3


def test_random_walk_leaves_covered_start():
    basis = SubsetBasis.empty(2).extended(0, np.array([1.0, 0.0]))
    covered = _draw([2.0, 0.0], index=0)
    also_covered = _draw([4.0, 0.0], index=1)
    live = _draw([0.0, 1.0], index=2)
    # every proposal is accepted from a covered point, so the walk leaves
    # immediately and then sticks at the live point
    out = random_walk([covered, also_covered, live, also_covered], basis, 2.0,
                      np.random.default_rng(1))
    assert out[1] == 2


def test_random_walk_matches_kernel_backend():
    rng_data = np.random.default_rng(42)
    X = PointSet(rng_data.standard_normal((12, 3)))
    basis = basis_from(X, [0, 5])
    pool = draw_mixture_pool(iter(X.points), 2.0, 9, np.random.default_rng(7))
    draws = [pool[j] for j in range(9)]

    ref = random_walk(draws, basis, 2.0, np.random.default_rng(99))

    pts = np.vstack([d[0] for d in draws])
    dist_pow = (basis.distances(pts) ** 2.0).reshape(1, -1)
    qmat = np.array([[d[2] for d in draws]])
    variates = open_unit(np.random.default_rng(99), 8).reshape(1, -1)
    out = np.empty(1, dtype=np.intp)
    pyfallback.run_walks(dist_pow, qmat, variates, out)
    assert draws[int(out[0])][1] == ref[1]


def test_walk_state_counts_steps():
    from lpsubsel import WalkState
    state = WalkState(current=_draw([1.0, 0.0]))
    assert state.steps_taken == 0


# ------------------------------------------------------------ full sampler

def test_one_pass_deterministic_and_bounded():
    rng = np.random.default_rng(3)
    X = rng.standard_normal((30, 5))
    cfg = theorem_params(k=2, p=2.0, delta=0.5, t_override=3, seed=17)
    a = one_pass_adaptive_sample(as_source(X), cfg)
    b = one_pass_adaptive_sample(as_source(X), cfg)
    assert [x.member_indices for x in a] == [y.member_indices for y in b]
    for basis in a:
        assert len(basis.member_indices) <= cfg.t * cfg.l
        assert basis.rank <= min(len(basis.member_indices), 5)
        assert len(set(basis.member_indices)) == len(basis.member_indices)


def test_one_pass_zero_rounds_returns_empty_subsets():
    cfg = SamplerConfig(k=1, p=2.0, delta=0.5, epsilon=0.125, epsilon1=0.1,
                        epsilon2=0.01, m=2, t=2, l=0, repetitions=3, seed=0)
    src = as_source(np.eye(3))
    bases = one_pass_adaptive_sample(src, cfg)
    assert len(bases) == 3
    assert all(b.member_indices == () for b in bases)
    assert src.auditor.selection_passes == 0  # nothing to sample, no pass


def test_one_pass_timings_split():
    cfg = theorem_params(k=1, p=2.0, delta=0.5, t_override=2, seed=5)
    timings = {}
    one_pass_adaptive_sample(as_source(np.eye(4)), cfg, timings=timings)
    assert set(timings) == {"selection_seconds", "walk_seconds"}
    assert timings["selection_seconds"] >= 0.0


def test_one_pass_single_draw_matches_adaptive_distribution():
    # l=1, t=1, long walk: the selected index should be distributed like the
    # empty-subset adaptive distribution; oracle = exact normalization
    p = 2.0
    X = PointSet(SIX_POINTS)
    target = adaptive_distribution(X, SubsetBasis.empty(2), p).masses
    counts = np.zeros(X.n)
    runs = 10_000
    cfg_base = dict(k=1, p=p, delta=0.5, epsilon=0.125, epsilon1=0.1,
                    epsilon2=0.01, m=200, t=1, l=1, repetitions=1)
    for seed in range(runs):
        cfg = SamplerConfig(seed=seed, **cfg_base)
        basis = one_pass_adaptive_sample(as_source(X), cfg)[0]
        counts[basis.member_indices[0]] += 1
    assert tv_distance(counts / runs, target) <= 0.05
