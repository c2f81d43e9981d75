# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Metropolis walk chains and weighted reservoir updates.

Mirrors `pyfallback` exactly; all randomness comes in as arrays, so results
are bit-identical across backends.
"""

BACKEND = "native"


def run_walks(const double[:, ::1] dist_pow, const double[:, ::1] qmass,
              const double[:, ::1] uniforms, Py_ssize_t[::1] out):
    """See pyfallback.run_walks; identical contract."""
    cdef Py_ssize_t n_walks = dist_pow.shape[0]
    cdef Py_ssize_t width = dist_pow.shape[1]
    cdef Py_ssize_t w, j, cur
    cdef double dc
    for w in range(n_walks):
        cur = 0
        for j in range(1, width):
            dc = dist_pow[w, cur]
            if dc == 0.0 or dist_pow[w, j] * qmass[w, cur] > uniforms[w, j - 1] * dc * qmass[w, j]:
                cur = j
        out[w] = cur
    return out.base


def update_bank(const double[::1] exps, double weight, Py_ssize_t index,
                const double[::1] point, double[::1] best, Py_ssize_t[::1] win_index,
                double[::1] win_weight, double[:, ::1] win_rows):
    """See pyfallback.update_bank; identical contract."""
    cdef Py_ssize_t slots = best.shape[0]
    cdef Py_ssize_t d = point.shape[0]
    cdef Py_ssize_t j, c
    cdef Py_ssize_t wins = 0
    cdef double arrival
    if weight <= 0.0:
        return 0
    for j in range(slots):
        # true division, matching the fallback bit for bit
        arrival = exps[j] / weight
        if arrival < best[j]:
            best[j] = arrival
            win_index[j] = index
            win_weight[j] = weight
            for c in range(d):
                win_rows[j, c] = point[c]
            wins += 1
    return wins
