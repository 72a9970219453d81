"""Approximate betweenness centrality with Brandes' algorithm.

The forward pass is a level-synchronous BFS that claims vertices with a CAS
on their depth, accumulates shortest-path counts with atomic adds, and marks
every edge ``u -> v`` with ``depth[v] == depth[u] + 1`` in a successor
bitmap (one bit per stored edge).  The backward pass walks the levels in
reverse and computes each vertex's dependency from its flagged out-edges
only, so it never searches for predecessors.

Scores from all sources are summed and then divided by the maximum, mapping
the largest score to 1.  A source contributes nothing to its own score.
"""

import numba
import numpy as np
from numba import njit, prange

from ._atomics import atomic_add, atomic_fadd, atomic_or, cas
from ._common import KernelError, alloc_solution

_LOCAL_QUEUE = 4096


@njit(cache=True)
def _flush(local, count, queue, tail):
    pos = atomic_add(tail, 0, count)
    queue[pos:pos + count] = local[:count]


@njit(parallel=True, cache=True)
def _forward_step(out_offsets, out_neighbors, depths, path_counts, succ, queue, head, tail,
                  depth, nthreads):
    size = tail - head
    nchunks = min(size, 4 * nthreads)
    next_tail = np.full(1, tail, dtype=np.int64)
    for c in prange(nchunks):
        lo = head + size * c // nchunks
        hi = head + size * (c + 1) // nchunks
        local = np.empty(_LOCAL_QUEUE, dtype=queue.dtype)
        count = 0
        for i in range(lo, hi):
            u = queue[i]
            for e in range(out_offsets[u], out_offsets[u + 1]):
                v = out_neighbors[e]
                if depths[v] == -1 and cas(depths, v, -1, depth):
                    if count == _LOCAL_QUEUE:
                        _flush(local, count, queue, next_tail)
                        count = 0
                    local[count] = v
                    count += 1
                if depths[v] == depth:
                    atomic_or(succ, e >> 6, np.uint64(1) << np.uint64(e & 63))
                    atomic_fadd(path_counts, v, path_counts[u])
        if count:
            _flush(local, count, queue, next_tail)
    return next_tail[0]


@njit(parallel=True, cache=True)
def _backward_level(out_offsets, out_neighbors, path_counts, succ, deltas, scores, queue,
                    lo, hi):
    for i in prange(lo, hi):
        u = queue[i]
        delta_u = 0.0
        for e in range(out_offsets[u], out_offsets[u + 1]):
            if (succ[e >> 6] >> np.uint64(e & 63)) & np.uint64(1):
                v = out_neighbors[e]
                delta_u += path_counts[u] / path_counts[v] * (1.0 + deltas[v])
        deltas[u] = delta_u
        scores[u] += delta_u


@njit(parallel=True, cache=True)
def _reset(depths, path_counts, deltas, succ):
    for v in prange(len(depths)):
        depths[v] = -1
        path_counts[v] = 0.0
        deltas[v] = 0.0
    for i in prange(len(succ)):
        succ[i] = 0


@njit(cache=True)
def _brandes(out_offsets, out_neighbors, sources, out, nthreads):
    n = len(out)
    m = len(out_neighbors)
    scores = np.zeros(n, dtype=np.float64)
    depths = np.empty(n, dtype=np.int32)
    path_counts = np.empty(n, dtype=np.float64)
    deltas = np.empty(n, dtype=np.float64)
    succ = np.empty((m + 63) // 64, dtype=np.uint64)
    queue = np.empty(n, dtype=np.uint32)
    level_start = np.empty(n + 1, dtype=np.int64)
    for s in sources:
        _reset(depths, path_counts, deltas, succ)
        depths[s] = 0
        path_counts[s] = 1.0
        queue[0] = s
        level_start[0] = 0
        level_start[1] = 1
        nlevels = 1
        depth = 0
        while level_start[nlevels] > level_start[nlevels - 1]:
            depth += 1
            tail = _forward_step(out_offsets, out_neighbors, depths, path_counts, succ, queue,
                                 level_start[nlevels - 1], level_start[nlevels], depth,
                                 nthreads)
            nlevels += 1
            level_start[nlevels] = tail
        # the last recorded level is empty; level 0 is the source itself
        for d in range(nlevels - 2, 0, -1):
            _backward_level(out_offsets, out_neighbors, path_counts, succ, deltas, scores,
                            queue, level_start[d], level_start[d + 1])
    biggest = scores.max() if n else 0.0
    for v in range(n):
        out[v] = scores[v] / biggest if biggest > 0 else 0.0


def betweenness(g, sources):
    """Betweenness scores (float32, max-normalized) from the given sources.

    Edge weights are ignored.  Every source needs a non-zero out-degree.
    """
    sources = np.asarray(sources, dtype=np.int64).reshape(-1)
    if len(sources) == 0:
        raise KernelError("betweenness needs at least one source")
    n = g.num_nodes
    for s in sources:
        if not 0 <= s < n:
            raise KernelError(f"source {s} out of range for n={n}")
        if g.out_offsets[s + 1] == g.out_offsets[s]:
            raise KernelError(f"source {s} has zero out-degree")
    scores = alloc_solution("bc.scores", n, np.float32)
    _brandes(g.out_offsets, g.out_neighbors, sources, scores, numba.get_num_threads())
    return scores
