"""The one-pass MCMC adaptive sampler.

Multiple rounds of adaptive sampling (pick points with probability
proportional to d(x, span S)^p given the already-selected S) normally
cost one pass per round. Here each adaptive draw is approximated by an
m-step independence Metropolis walk over i.i.d. proposals from the
mixture distribution q, and the whole proposal pool is collected in a
single shared pass up front. Only each walk's final location joins S.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError, ParameterError
from .geometry import SubsetBasis
from .proposal import draw_mixture_pool, open_unit
from .stream import iterate_once

# Named RNG stream tags: pool pass, per-walk variates, baseline draws.
_POOL_STREAM = 0
_WALK_STREAM = 1
_BASELINE_STREAM = 2


def pool_rng(seed):
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(_POOL_STREAM,))))


def walk_rng(seed, repetition, round_index, walk_index):
    """Independent named stream per (repetition, round, walk).

    Keeps repetitions reproducible no matter how they are scheduled.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(
        seed, spawn_key=(_WALK_STREAM, repetition, round_index, walk_index))))


def baseline_rng(seed):
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(_BASELINE_STREAM,))))


@dataclass(frozen=True)
class SamplerConfig:
    """All sampler parameters.

    `theorem_params` produces configs whose derived fields follow the
    additive-guarantee recipe; hand-built configs just need to satisfy the
    range checks (m=0 and l=0 are allowed for degenerate runs).
    """

    k: int
    p: float
    delta: float
    epsilon: float
    epsilon1: float
    epsilon2: float
    m: int
    t: int
    l: int
    repetitions: int
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")
        if not (math.isfinite(self.p) and self.p >= 1.0):
            raise ParameterError(f"p must be a finite real >= 1, got {self.p}")
        for name in ("epsilon", "epsilon1", "epsilon2"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ParameterError(f"{name} must lie in (0,1), got {v}")
        if self.m < 0 or self.t < 1 or self.l < 0 or self.repetitions < 1:
            raise ParameterError(
                f"need m >= 0, t >= 1, l >= 0, repetitions >= 1; got "
                f"m={self.m}, t={self.t}, l={self.l}, repetitions={self.repetitions}")
        if self.seed < 0:
            raise ParameterError(f"seed must be a nonnegative integer, got {self.seed}")

    @property
    def pool_size_per_repetition(self):
        # one start plus m proposals per walk
        return self.l * self.t * (self.m + 1)

    @property
    def pool_size(self):
        return self.repetitions * self.pool_size_per_repetition

    @property
    def lemma_min_walk_length(self):
        """Walk length the single-draw TV analysis asks for; reported as a
        diagnostic because the end-to-end recipe's m is smaller in general."""
        return math.ceil(1.0 + (2.0 / self.epsilon1) * math.log(1.0 / self.epsilon2))

    @property
    def meets_lemma_walk_length(self):
        return self.m >= self.lemma_min_walk_length

    def as_dict(self):
        return {
            "k": self.k, "p": self.p, "delta": self.delta,
            "epsilon": self.epsilon, "epsilon1": self.epsilon1,
            "epsilon2": self.epsilon2, "m": self.m, "t": self.t, "l": self.l,
            "repetitions": self.repetitions, "seed": self.seed,
            "pool_size": self.pool_size,
            "lemma_min_walk_length": self.lemma_min_walk_length,
            "meets_lemma_walk_length": self.meets_lemma_walk_length,
        }


def theorem_params(k, p, delta, t_override=None, *, c_t=1.0, seed=0,
                   l_override=None, m_override=None, repetitions_override=None):
    """Parameter recipe for the additive guarantee.

    epsilon = delta/4, epsilon1 = delta^p / 2^(p+1), l = k,
    epsilon2 = delta^p / (2^(p+1) t l), m = ceil(1 + (2/delta^p) ln(k/delta^p)),
    repetitions = ceil(2 k ln(1/epsilon)). t's hidden logarithmic factor is
    pinned as c_t * ceil((k/epsilon)^(p+1) ln(2 + k/epsilon)); desk-scale
    runs normally pass t_override since the full t is astronomically large.
    Natural logs throughout; counts are rounded up.
    """
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0,1), got {delta}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if not (math.isfinite(p) and p >= 1.0):
        raise ParameterError(f"p must be a finite real >= 1, got {p}")
    epsilon = delta / 4.0
    delta_pow = delta ** p
    epsilon1 = delta_pow / 2.0 ** (p + 1.0)
    l = k if l_override is None else l_override
    if t_override is not None:
        t = int(t_override)
    else:
        ratio = k / epsilon
        t = math.ceil(c_t * math.ceil(ratio ** (p + 1.0) * math.log(2.0 + ratio)))
    m = math.ceil(1.0 + (2.0 / delta_pow) * math.log(k / delta_pow)) \
        if m_override is None else m_override
    repetitions = math.ceil(2.0 * k * math.log(1.0 / epsilon)) \
        if repetitions_override is None else repetitions_override
    epsilon2 = delta_pow / (2.0 ** (p + 1.0) * t * max(l, 1))
    return SamplerConfig(k=k, p=p, delta=delta, epsilon=epsilon,
                         epsilon1=epsilon1, epsilon2=epsilon2, m=m, t=t, l=l,
                         repetitions=repetitions, seed=seed)


@dataclass
class WalkState:
    """Current location of one walk plus the number of steps taken."""

    current: tuple  # (point, stream index, q-mass)
    steps_taken: int = 0


def acceptance_ratio(x, y, basis, p):
    """Metropolis ratio d(y, span S)^p q(x) / (d(x, span S)^p q(y)).

    Conventions for covered points: +inf when only the current point has
    zero distance (always move off it), 1 when both do (indifferent; any
    variate below 1 accepts).
    """
    x_point, _, x_mass = x
    y_point, _, y_mass = y
    if x_mass <= 0.0 or y_mass <= 0.0:
        raise InputError("q-masses must be positive (mixture floor)")
    dx = basis.distance(x_point) ** p
    dy = basis.distance(y_point) ** p
    if dx == 0.0:
        return math.inf if dy > 0.0 else 1.0
    return (dy * x_mass) / (dx * y_mass)


def random_walk(pool_slice, basis, p, rng):
    """Run one m-step walk over a slice of m+1 pool draws; return the final draw.

    The first draw is the start, the rest are proposals in order. Each step
    draws a variate r in the open unit interval and moves iff the acceptance
    ratio strictly exceeds r. This is the reference scalar path; the batched
    sampler uses the kernel backend, and both agree draw-for-draw.
    """
    draws = [pool_slice[j] for j in range(len(pool_slice))]
    if not draws:
        raise InputError("pool slice must hold at least the start draw")
    steps = len(draws) - 1
    variates = open_unit(rng, steps)
    state = WalkState(current=draws[0])
    for j in range(1, steps + 1):
        if acceptance_ratio(state.current, draws[j], basis, p) > variates[j - 1]:
            state.current = draws[j]
        state.steps_taken += 1
    return state.current


def one_pass_adaptive_sample(source, config, timings=None):
    """The one-pass approximate adaptive sampler.

    One selection pass builds the shared proposal pool for all repetitions;
    each repetition then runs l rounds of t independent m-step walks against
    its current subset and keeps only each walk's final point. Walks within
    a round all see the basis frozen at the round start. Returns one
    SubsetBasis per repetition (duplicate picks collapse).

    If `timings` is a dict it receives the wall-clock split between the
    streaming pass and the walk phase.
    """
    d = source.d
    if d is None:
        raise InputError("source dimension unknown")
    reps = config.repetitions
    if config.l == 0:
        # no rounds requested: nothing to sample, no pass needed
        if timings is not None:
            timings.update(selection_seconds=0.0, walk_seconds=0.0)
        return [SubsetBasis.empty(d) for _ in range(reps)]

    t0 = time.perf_counter()
    pool = draw_mixture_pool(iterate_once(source, "selection"), config.p,
                             config.pool_size, pool_rng(config.seed))
    t1 = time.perf_counter()

    width = config.m + 1
    block = config.t * width
    finals = np.empty(config.t, dtype=np.intp)
    bases = []
    for rep in range(reps):
        basis = SubsetBasis.empty(d)
        members = set()
        for rnd in range(config.l):
            if basis.rank == d:
                # span covers the ambient space, so every distance is zero;
                # the adaptive target is undefined and the error already 0
                break
            start = (rep * config.l + rnd) * block
            assert start + block <= pool.size, "pool sized too small (sizing bug)"
            pts, idxs, qm = pool.slice(start, start + block)
            dist_pow = np.ascontiguousarray(
                (basis.distances(pts) ** config.p).reshape(config.t, width))
            qmat = np.ascontiguousarray(qm.reshape(config.t, width))
            variates = np.empty((config.t, config.m))
            for w in range(config.t):
                variates[w] = open_unit(walk_rng(config.seed, rep, rnd, w), config.m)
            _kernels.run_walks(dist_pow, qmat, variates, finals)
            for w in range(config.t):
                sel = w * width + int(finals[w])
                idx = int(idxs[sel])
                if idx not in members:
                    members.add(idx)
                    basis = basis.extended(idx, pts[sel])
        bases.append(basis)
    t2 = time.perf_counter()
    if timings is not None:
        timings.update(selection_seconds=t1 - t0, walk_seconds=t2 - t1)
    return bases
