"""One-pass construction of i.i.d. draws from the mixture proposal
distribution q(x) = 0.5 * d(x, span pivot)^p / err_p(X, pivot) + 0.5/n.

Two banks of single-slot weighted reservoirs run over one shared pass,
one keyed by the distance weight and one uniform; each pool slot then
takes its draw from one bank by a fair coin. q is bounded below by
1/(2n), the floor the walk's mixing analysis relies on.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InputError, ParameterError

# Sum tolerance for an explicit probability vector over the dataset.
_MASS_TOL = 1e-12


def open_unit(rng, size=None):
    """Uniform variates on the open interval (0,1), never exactly 0 or 1."""
    return rng.integers(1, 1 << 53, size=size) / float(1 << 53)


@dataclass(frozen=True)
class MixtureWeights:
    """The proposal distribution q over a dataset, for a fixed pivot subset.

    pivot=None means the empty pivot, the form the shipped algorithm uses:
    the distance weight degenerates to the plain norm ||x||^p.
    """

    p: float
    pivot: object = None  # SubsetBasis or None

    def __post_init__(self):
        if not (np.isfinite(self.p) and self.p >= 1.0):
            raise InputError(f"p must be a finite real >= 1, got {self.p}")

    def raw_weight(self, x):
        """The unnormalized distance weight d(x, span pivot)^p."""
        if self.pivot is None:
            return float(np.linalg.norm(x)) ** self.p
        return self.pivot.distance(x) ** self.p

    def masses(self, X):
        """Exact q as a vector over X; requires the pivot not to span X."""
        if self.pivot is None:
            w = np.linalg.norm(X.points, axis=1) ** self.p
        else:
            w = self.pivot.distances(X.points) ** self.p
        total = float(w.sum())
        if total <= 0.0:
            raise InputError("pivot spans the dataset; the mixture is undefined")
        q = 0.5 * w / total + 0.5 / X.n
        assert abs(q.sum() - 1.0) <= 100 * _MASS_TOL * X.n
        return q

    @staticmethod
    def floor(n):
        """Guaranteed lower bound on q(x): the uniform component alone."""
        return 0.5 / n


@dataclass(frozen=True)
class ProposalPool:
    """Finalized i.i.d. draws from q, in slot order.

    Each slot records the drawn point, its position in the stream, and its
    q-mass (computed at pass end from the accumulated weight total and n).
    """

    points: np.ndarray          # (size, d)
    indices: np.ndarray         # (size,) stream positions
    qmass: np.ndarray           # (size,)
    stream_length: int
    weight_total: float
    p: float = field(default=2.0)

    def __post_init__(self):
        lo = MixtureWeights.floor(self.stream_length)
        if self.qmass.size and not ((self.qmass >= lo - _MASS_TOL) & (self.qmass <= 1.0 + _MASS_TOL)).all():
            raise InputError("recorded q-mass outside [1/(2n), 1]")

    @property
    def size(self):
        return len(self.qmass)

    def __len__(self):
        return self.size

    def __getitem__(self, i):
        return self.points[i], int(self.indices[i]), float(self.qmass[i])

    def slice(self, start, stop):
        """Array views (points, indices, qmass) for slots [start, stop)."""
        return self.points[start:stop], self.indices[start:stop], self.qmass[start:stop]


class _ReservoirBank:
    """A bank of `slots` independent single-slot weighted reservoirs.

    Each slot runs an exponential race: per point it sees arrival time
    Exp(1)/weight and keeps the earliest arrival. Winning probability is
    proportional to the weight; slots are mutually independent, giving
    i.i.d. draws with replacement after one shared pass.
    """

    def __init__(self, slots):
        self.slots = slots
        self.best = None
        self.win_index = None
        self.win_weight = None
        self.win_rows = None

    def _allocate(self, d):
        self.best = np.full(self.slots, np.inf)
        self.win_index = np.full(self.slots, -1, dtype=np.intp)
        self.win_weight = np.zeros(self.slots)
        self.win_rows = np.zeros((self.slots, d))

    def offer(self, index, point, weight, rng):
        if self.best is None:
            self._allocate(point.shape[0])
        exps = rng.standard_exponential(self.slots)
        _kernels.update_bank(exps, float(weight), index, point, self.best,
                             self.win_index, self.win_weight, self.win_rows)

    @property
    def filled(self):
        return self.best is not None and bool((self.win_index >= 0).all())


def reservoir_draw_iid(stream, weight_fn, count, rng):
    """`count` i.i.d. draws from a stream, P(x) proportional to weight_fn(x).

    One shared pass, one single-slot reservoir per draw; the weight total
    is never needed in advance. Returns a list of (point, weight) pairs.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    bank = _ReservoirBank(count)
    n = 0
    for index, point in enumerate(stream):
        point = np.ascontiguousarray(point, dtype=np.float64)
        bank.offer(index, point, weight_fn(point), rng)
        n += 1
    if n == 0:
        raise InputError("empty stream")
    if not bank.filled:
        raise InputError("all weights are zero; nothing can be drawn")
    return [(bank.win_rows[j].copy(), float(bank.win_weight[j])) for j in range(count)]


def draw_mixture_pool(stream, p, pool_size, rng, pivot=None):
    """Build a ProposalPool of `pool_size` i.i.d. draws from q in one pass.

    Runs the distance-weight bank and the uniform bank over the same
    stream; afterwards each slot flips a fair coin to pick its bank, and
    q-masses are attached using the weight total and n accumulated during
    the pass.
    """
    mixture = MixtureWeights(p=p, pivot=pivot)
    if pool_size < 1:
        raise ParameterError(f"pool_size must be >= 1, got {pool_size}")
    weighted = _ReservoirBank(pool_size)
    uniform = _ReservoirBank(pool_size)
    n = 0
    weight_total = 0.0
    for index, point in enumerate(stream):
        point = np.ascontiguousarray(point, dtype=np.float64)
        w = mixture.raw_weight(point)
        weight_total += w
        weighted.offer(index, point, w, rng)
        uniform.offer(index, point, 1.0, rng)
        n += 1
    if n == 0:
        raise InputError("empty stream")
    if weight_total <= 0.0:
        raise InputError("all distance weights are zero; the mixture is undefined")

    take_weighted = rng.random(pool_size) < 0.5
    points = np.where(take_weighted[:, None], weighted.win_rows, uniform.win_rows)
    indices = np.where(take_weighted, weighted.win_index, uniform.win_index)
    # q-mass depends on the drawn point only, not on which bank produced it.
    if pivot is None:
        drawn_w = np.linalg.norm(points, axis=1) ** p
    else:
        drawn_w = pivot.distances(points) ** p
    qmass = 0.5 * drawn_w / weight_total + 0.5 / n
    return ProposalPool(points=points, indices=indices.astype(np.intp),
                        qmass=qmass, stream_length=n,
                        weight_total=weight_total, p=p)
