"""Multi-pass and one-shot baselines the one-pass sampler is compared against."""

import numpy as np

from .errors import InputError, ParameterError
from .geometry import RANK_TOLERANCE, SubsetBasis
from .proposal import _ReservoirBank
from .stream import as_source, iterate_once


def _span_of_rows(indices, rows, d):
    """SubsetBasis over all the given draws, duplicates kept in order.

    Equivalent to extending one draw at a time, but the span is grown by
    scanning for the first row outside it (rank grows at most d times), so
    large with-replacement subsets stay cheap to assemble.
    """
    tracker = SubsetBasis.empty(d)
    norms = np.maximum(np.linalg.norm(rows, axis=1), 1e-300)
    blocked = np.zeros(len(rows), dtype=bool)
    while tracker.rank < d:
        outside = ~blocked & (tracker.distances(rows) > RANK_TOLERANCE * norms)
        candidates = np.flatnonzero(outside)
        if candidates.size == 0:
            break
        j = int(candidates[0])
        grown = tracker.extended(int(indices[j]), rows[j])
        if grown.rank == tracker.rank:
            blocked[j] = True  # borderline residual, dependent after re-orthogonalization
            continue
        tracker = grown
    return SubsetBasis(indices, tracker.basis, d)


def exact_adaptive_sample(data, p, t, l, rng, auditor=None):
    """Ground-truth adaptive sampling: l rounds, one full pass per round.

    Each round streams the data to compute the exact distribution
    proportional to d(x, span S)^p, then draws t i.i.d. indices from it
    and extends S (duplicates collapse). Terminates early once the error
    hits zero, where the distribution is undefined. Its defining cost is
    l selection passes on the auditor.
    """
    src = as_source(data, auditor=auditor)
    if t < 1 or l < 0:
        raise ParameterError(f"need t >= 1 and l >= 0, got t={t}, l={l}")
    basis = SubsetBasis.empty(src.d)
    members = set()
    rows = None
    for _ in range(l):
        # termination check against the previous round's buffer costs no pass
        if rows is not None and float((basis.distances(rows) ** p).sum()) <= 0.0:
            break
        rows = np.vstack([np.asarray(x, dtype=np.float64)
                          for x in iterate_once(src, "selection")])
        dist_pow = basis.distances(rows) ** p
        total = float(dist_pow.sum())
        if total <= 0.0:
            break
        picks = rng.choice(rows.shape[0], size=t, p=dist_pow / total)
        for i in picks:
            idx = int(i)
            if idx not in members:
                members.add(idx)
                basis = basis.extended(idx, rows[idx])
    return basis


def squared_length_sample(data, p, count, rng, auditor=None):
    """One-shot norm-power sampling: count i.i.d. draws with P(x) ~ ||x||^p.

    p=2 is classical squared-length sampling. One selection pass; the
    returned subset keeps all count draws in order, duplicates included
    (with-replacement semantics), so its rank is at most the number of
    distinct picks.
    """
    src = as_source(data, auditor=auditor)
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    bank = _ReservoirBank(count)
    n = 0
    for index, point in enumerate(iterate_once(src, "selection")):
        point = np.ascontiguousarray(point, dtype=np.float64)
        bank.offer(index, point, float(np.linalg.norm(point)) ** p, rng)
        n += 1
    if n == 0:
        raise InputError("empty stream")
    if not bank.filled:
        raise InputError("all points have zero norm; nothing can be drawn")
    return _span_of_rows(bank.win_index, bank.win_rows, src.d)
