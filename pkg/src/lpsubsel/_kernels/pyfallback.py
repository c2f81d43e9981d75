"""Pure NumPy/Python implementations of the hot kernels.

Semantically identical to the compiled versions in `_native`: both consume
randomness supplied by the caller, so for a fixed seed every backend
produces bit-identical results.
"""

import numpy as np

BACKEND = "python"


def run_walks(dist_pow, qmass, uniforms, out):
    """Run one m-step accept/reject chain per row over precomputed arrays.

    Row layout: column 0 is the walk start, columns 1..m are the proposals.
    `dist_pow` holds d(., span S)^p, `qmass` the proposal masses (always
    positive thanks to the mixture floor), `uniforms` the per-step variates
    in (0,1). A proposal is accepted when the acceptance ratio exceeds the
    variate; a zero-distance current point always moves (ratio is +inf
    against a positive-distance proposal and 1 against a zero-distance one,
    both above any variate < 1). Writes the final column index of each walk
    into `out` and returns it.
    """
    n_walks, width = dist_pow.shape
    for w in range(n_walks):
        dp = dist_pow[w]
        q = qmass[w]
        u = uniforms[w]
        cur = 0
        for j in range(1, width):
            if dp[cur] == 0.0 or dp[j] * q[cur] > u[j - 1] * dp[cur] * q[j]:
                cur = j
        out[w] = cur
    return out


def update_bank(exps, weight, index, point, best, win_index, win_weight, win_rows):
    """Feed one streamed point to a bank of independent single-slot reservoirs.

    Slot j keeps the point with the smallest exponential arrival time
    exps[j]/weight seen so far, which selects each point with probability
    proportional to its weight. A nonpositive weight never wins. Returns
    the number of slots the point won.
    """
    if weight <= 0.0:
        return 0
    arrivals = exps / weight
    mask = arrivals < best
    wins = int(np.count_nonzero(mask))
    if wins:
        best[mask] = arrivals[mask]
        win_index[mask] = index
        win_weight[mask] = weight
        win_rows[mask] = point
    return wins
