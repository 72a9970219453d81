"""PageRank by plain power iteration, pulling along incoming edges.

Each vertex sums the contributions of its in-neighbors, so every score is
written by exactly one worker and no atomics are needed.  Iteration stops
once the L1 change of one sweep falls below the tolerance.
"""

import warnings

import numpy as np
from numba import njit, prange

from ._common import KernelError, alloc_solution

DEFAULT_DAMPING = 0.85
DEFAULT_TOLERANCE = 1e-4
DEFAULT_MAX_ITERS = 20


class PageRankConvergenceWarning(RuntimeWarning):
    pass


@njit(parallel=True, cache=True)
def _pagerank(out_offsets, in_offsets, in_neighbors, damping, tolerance, max_iters, scores):
    n = len(scores)
    base = (1.0 - damping) / n
    contrib = np.empty(n, dtype=np.float32)
    for v in prange(n):
        scores[v] = 1.0 / n
    error = np.inf
    for it in range(max_iters):
        for v in prange(n):
            d = out_offsets[v + 1] - out_offsets[v]
            contrib[v] = scores[v] / d if d else 0.0
        error = 0.0
        for u in prange(n):
            incoming = 0.0
            for e in range(in_offsets[u], in_offsets[u + 1]):
                incoming += contrib[in_neighbors[e]]
            old = scores[u]
            scores[u] = base + damping * incoming
            error += abs(scores[u] - old)
        if error < tolerance:
            return it + 1, error
    return max_iters, error


def pagerank(g, damping=DEFAULT_DAMPING, tolerance=DEFAULT_TOLERANCE,
             max_iters=DEFAULT_MAX_ITERS, *, return_info=False):
    """PageRank scores as float32.

    Warns with :class:`PageRankConvergenceWarning` when ``max_iters`` sweeps
    end without meeting ``tolerance``.  With ``return_info`` the result is
    ``(scores, iterations, final_error)``.
    """
    n = g.num_nodes
    if n == 0:
        raise KernelError("pagerank on an empty graph")
    scores = alloc_solution("pr.scores", n, np.float32)
    iters, error = _pagerank(g.out_offsets, g.in_offsets, g.in_neighbors, float(damping),
                             float(tolerance), int(max_iters), scores)
    if error >= tolerance:
        warnings.warn(f"pagerank stopped after {iters} iterations with L1 change "
                      f"{error:.3g} >= {tolerance:g}", PageRankConvergenceWarning, stacklevel=2)
    if return_info:
        return scores, iters, error
    return scores
