"""Direction-optimizing breadth-first search producing a parent array.

Top-down steps expand a queue frontier and claim vertices with a CAS on
their parent slot.  Bottom-up steps have every unvisited vertex scan its
incoming neighbors for a member of the (dense) frontier.  The switch is
governed by ``alpha`` (go bottom-up once the frontier's outgoing edges
exceed ``edges_to_check / alpha``) and ``beta`` (return top-down once the
frontier shrinks below ``n / beta``).

Before the search every unvisited vertex stores ``-degree`` in its parent
slot.  A top-down step reads that slot anyway to test for "unvisited", so
the frontier's outgoing edge count accumulates for free instead of needing
a separate pass over the new frontier.  A final pass rewrites every
remaining negative entry to -1.
"""

import numba
import numpy as np
from numba import njit, prange

from ._atomics import atomic_add, cas
from ._common import KernelError, alloc_solution

DEFAULT_ALPHA = 15
DEFAULT_BETA = 18

_LOCAL_QUEUE = 4096


@njit(parallel=True, cache=True)
def _init_parent(out_offsets, parent, encode_degree):
    for v in prange(len(parent)):
        d = out_offsets[v + 1] - out_offsets[v]
        if encode_degree and d != 0:
            parent[v] = -d
        else:
            parent[v] = -1


@njit(cache=True)
def _flush(local, count, queue, tail):
    pos = atomic_add(tail, 0, count)
    queue[pos:pos + count] = local[:count]


@njit(parallel=True, cache=True)
def _td_step(out_offsets, out_neighbors, parent, queue, head, tail, nthreads):
    """Expand ``queue[head:tail]``, appending claimed vertices after ``tail``.

    Returns the new tail and the summed degrees of the claimed vertices
    (read from the degree encoding of their parent slots).
    """
    size = tail - head
    nchunks = min(size, 4 * nthreads)
    next_tail = np.full(1, tail, dtype=np.int64)
    scout = 0
    for c in prange(nchunks):
        lo = head + size * c // nchunks
        hi = head + size * (c + 1) // nchunks
        local = np.empty(_LOCAL_QUEUE, dtype=queue.dtype)
        count = 0
        local_scout = 0
        for i in range(lo, hi):
            u = queue[i]
            for e in range(out_offsets[u], out_offsets[u + 1]):
                v = out_neighbors[e]
                curr = parent[v]
                if curr < 0:
                    if cas(parent, v, curr, u):
                        if count == _LOCAL_QUEUE:
                            _flush(local, count, queue, next_tail)
                            count = 0
                        local[count] = v
                        count += 1
                        local_scout += -curr
        if count:
            _flush(local, count, queue, next_tail)
        scout += local_scout
    return next_tail[0], scout


@njit(parallel=True, cache=True)
def _frontier_degree_sum(out_offsets, queue, lo, hi):
    total = 0
    for i in prange(lo, hi):
        u = queue[i]
        total += out_offsets[u + 1] - out_offsets[u]
    return total


@njit(parallel=True, cache=True)
def _bu_step(in_offsets, in_neighbors, parent, front, nxt):
    awake = 0
    for u in prange(len(parent)):
        nxt[u] = 0
        if parent[u] < 0:
            for e in range(in_offsets[u], in_offsets[u + 1]):
                v = in_neighbors[e]
                if front[v]:
                    parent[u] = v
                    nxt[u] = 1
                    awake += 1
                    break
    return awake


@njit(parallel=True, cache=True)
def _queue_to_bitmap(queue, head, tail, front):
    for v in prange(len(front)):
        front[v] = 0
    for i in prange(head, tail):
        front[queue[i]] = 1


@njit(cache=True)
def _bitmap_to_queue(front, queue):
    count = 0
    for v in range(len(front)):
        if front[v]:
            queue[count] = v
            count += 1
    return count


@njit(parallel=True, cache=True)
def _finalize(parent):
    for v in prange(len(parent)):
        if parent[v] < 0:
            parent[v] = -1


@njit(cache=True)
def _bfs(out_offsets, out_neighbors, in_offsets, in_neighbors, source, alpha, beta,
         parent, direction_optimizing, encode_degree, nthreads):
    n = len(parent)
    _init_parent(out_offsets, parent, encode_degree)
    parent[source] = source
    queue = np.empty(n, dtype=np.uint32)
    queue[0] = source
    head = 0
    tail = 1
    nbu = n if direction_optimizing else 0
    front = np.empty(nbu, dtype=np.uint8)
    nxt = np.empty(nbu, dtype=np.uint8)
    edges_to_check = out_offsets[n]
    scout = out_offsets[source + 1] - out_offsets[source]
    while head < tail:
        if direction_optimizing and scout > edges_to_check / alpha:
            _queue_to_bitmap(queue, head, tail, front)
            awake = tail - head
            while True:
                old_awake = awake
                awake = _bu_step(in_offsets, in_neighbors, parent, front, nxt)
                front, nxt = nxt, front
                if not (awake >= old_awake or awake > n / beta):
                    break
            tail = _bitmap_to_queue(front, queue)
            head = 0
            scout = 1
        else:
            edges_to_check -= scout
            new_tail, scout = _td_step(out_offsets, out_neighbors, parent, queue, head, tail,
                                       nthreads)
            if not encode_degree:
                scout = _frontier_degree_sum(out_offsets, queue, tail, new_tail)
            head = tail
            tail = new_tail
    _finalize(parent)


def bfs(g, source, alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA, *,
        direction_optimizing=True, encode_degree=True):
    """Breadth-first search tree from ``source``.

    Parameters
    ----------
    g : CsrGraph
    source : int
    alpha, beta : float
        Direction-switching thresholds.
    direction_optimizing : bool
        ``False`` forces top-down steps only.
    encode_degree : bool
        ``False`` disables the degree-in-parent encoding and recomputes the
        frontier's edge count with a separate pass after each top-down step.

    Returns
    -------
    numpy.ndarray
        int32 parent array; ``parent[source] == source`` and unreachable
        vertices hold -1.
    """
    n = g.num_nodes
    if not 0 <= source < n:
        raise KernelError(f"source {source} out of range for n={n}")
    if alpha <= 0 or beta <= 0:
        raise KernelError("alpha and beta must be positive")
    parent = alloc_solution("bfs.parent", n, np.int32)
    _bfs(g.out_offsets, g.out_neighbors, g.in_offsets, g.in_neighbors, np.int64(source),
         float(alpha), float(beta), parent, direction_optimizing, encode_degree, numba.get_num_threads())
    return parent
