"""Triangle counting by ordered sorted-list intersection.

For each edge ``u > v`` the sorted neighbor lists of ``u`` and ``v`` are
merged, stopping as soon as candidates exceed ``v``, so each triangle
``u > v > w`` is found exactly once.  When the degree distribution looks
skewed the graph is first relabeled in decreasing-degree order, which makes
the ordering cut off far more work on hub vertices.
"""

import numpy as np
from numba import njit, prange

from ..graph import relabel_by_degree
from ..sources import SourcePicker
from ._common import KernelError

RELABEL_MIN_AVG_DEGREE = 10
RELABEL_SAMPLES = 1000
RELABEL_SKEW = 1.3


@njit(parallel=True, cache=True)
def _ordered_count(offsets, neighbors):
    total = 0
    for u in prange(len(offsets) - 1):
        start = offsets[u]
        for e in range(start, offsets[u + 1]):
            v = np.int64(neighbors[e])
            if v > u:
                break
            it = start
            for e2 in range(offsets[v], offsets[v + 1]):
                w = neighbors[e2]
                if w > v:
                    break
                while neighbors[it] < w:
                    it += 1
                if neighbors[it] == w:
                    total += 1
    return total


def worth_relabelling(g):
    """Heuristic: relabel when sampled median degree is well below the average.

    The average is ``m / n`` over stored (both-direction) edges.  Graphs with
    average below 10 are never relabeled.  Otherwise 1000 degrees are drawn
    with the default :class:`SourcePicker` sequence and relabeling pays off
    when ``average / 1.3`` exceeds their median.
    """
    if g.directed:
        raise ValueError("worth_relabelling expects an undirected graph")
    n = g.num_nodes
    if n == 0:
        return False
    average = g.num_edges / n
    if average < RELABEL_MIN_AVG_DEGREE:
        return False
    picker = SourcePicker(g)
    num_samples = min(RELABEL_SAMPLES, n)
    samples = np.sort([g.out_degree(picker.pick_next()) for _ in range(num_samples)])
    median = samples[num_samples // 2]
    return average / RELABEL_SKEW > median


def triangle_count(g, relabel=None):
    """Number of triangles in an undirected graph (Python int).

    ``relabel=None`` lets :func:`worth_relabelling` decide; the relabeling
    runs inside this call so it is charged to the kernel.
    """
    if g.directed:
        raise KernelError("triangle_count requires an undirected graph")
    if relabel is None:
        relabel = worth_relabelling(g)
    if relabel:
        g, _ = relabel_by_degree(g)
    return int(_ordered_count(g.out_offsets, g.out_neighbors))
