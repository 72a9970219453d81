"""Delta-stepping single-source shortest paths.

Each worker keeps private, growable bins indexed by ``dist // delta`` so
insertion needs no synchronization.  One shared bin holds the vertices of
the current minimum distance range; after every round the workers' bins for
the next non-empty range are concatenated into it in bulk.  Workers read the
shared bin in disjoint slices.  Distances are lowered with an atomic min.
"""

import numba
import numpy as np
from numba import njit, prange, types
from numba.typed import List

from ._atomics import atomic_min
from ._common import KernelError, alloc_solution

DIST_INF = np.iinfo(np.int32).max
DEFAULT_DELTA = 1

_NO_BIN = np.iinfo(np.int64).max
_vertex_list = types.ListType(types.uint32)


@njit(cache=True)
def _push(bins, b, v):
    while len(bins) <= b:
        bins.append(List.empty_list(types.uint32))
    bins[b].append(v)


@njit(parallel=True, cache=True)
def _relax_round(out_offsets, out_neighbors, out_weights, dist, frontier, size,
                 curr_bin, delta, worker_bins):
    nworkers = len(worker_bins)
    floor = delta * curr_bin
    for w in prange(nworkers):
        w = np.int64(w)
        bins = worker_bins[w]
        for i in range(size * w // nworkers, size * (w + 1) // nworkers):
            u = frontier[i]
            du = dist[u]
            # a stale copy left in a later bin after u was settled earlier
            if du < floor:
                continue
            for e in range(out_offsets[u], out_offsets[u + 1]):
                v = out_neighbors[e]
                nd = np.int64(du) + out_weights[e]
                old = atomic_min(dist, v, nd)
                if nd < old:
                    _push(bins, nd // delta, v)


@njit(cache=True)
def _next_bin(worker_bins, curr_bin):
    best = _NO_BIN
    for w in range(len(worker_bins)):
        bins = worker_bins[w]
        for b in range(curr_bin, min(len(bins), best)):
            if len(bins[b]):
                best = b
                break
    return best


@njit(cache=True)
def _gather(worker_bins, b, frontier):
    total = 0
    for w in range(len(worker_bins)):
        if b < len(worker_bins[w]):
            total += len(worker_bins[w][b])
    if total > len(frontier):
        frontier = np.empty(2 * total, dtype=frontier.dtype)
    size = 0
    for w in range(len(worker_bins)):
        bins = worker_bins[w]
        if b < len(bins):
            src = bins[b]
            for i in range(len(src)):
                frontier[size] = src[i]
                size += 1
            src.clear()
    return frontier, size


@njit(cache=True)
def _sssp(out_offsets, out_neighbors, out_weights, source, delta, dist, nworkers):
    for v in range(len(dist)):
        dist[v] = DIST_INF
    dist[source] = 0
    # over-allocated so it rarely has to grow
    frontier = np.empty(len(out_neighbors) + 1, dtype=np.uint32)
    frontier[0] = source
    size = 1
    worker_bins = List()
    for _ in range(nworkers):
        worker_bins.append(List.empty_list(_vertex_list))
    curr_bin = 0
    while size:
        _relax_round(out_offsets, out_neighbors, out_weights, dist, frontier, size,
                     curr_bin, delta, worker_bins)
        curr_bin = _next_bin(worker_bins, curr_bin)
        if curr_bin == _NO_BIN:
            break
        frontier, size = _gather(worker_bins, curr_bin, frontier)


def sssp(g, source, delta=DEFAULT_DELTA):
    """Shortest-path distances from ``source`` on a positively weighted graph.

    Returns an int32 array; unreachable vertices hold ``DIST_INF``
    (``2**31 - 1``).  ``delta`` only affects speed, never the result.
    """
    n = g.num_nodes
    if not g.weighted:
        raise KernelError("sssp requires a weighted graph")
    if not 0 <= source < n:
        raise KernelError(f"source {source} out of range for n={n}")
    delta = int(delta)
    if delta < 1:
        raise KernelError(f"delta must be >= 1, got {delta}")
    if g.num_edges and g.out_weights.min() <= 0:
        bad = int(np.argmax(g.out_weights <= 0))
        raise KernelError(f"non-positive edge weight {g.out_weights[bad]} at edge index {bad}")
    dist = alloc_solution("sssp.dist", n, np.int32)
    _sssp(g.out_offsets, g.out_neighbors, g.out_weights, np.int64(source), np.int64(delta),
          dist, numba.get_num_threads())
    return dist
