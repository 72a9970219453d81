"""The six benchmark kernels.

Every kernel takes an immutable :class:`~gapkit.graph.CsrGraph` and returns
a freshly allocated solution.  Loops run in numba parallel regions; the
worker count follows ``numba.set_num_threads``.
"""

from ._common import KernelError, alloc_solution, allocation_hooks
from .bc import betweenness
from .bfs import DEFAULT_ALPHA, DEFAULT_BETA, bfs
from .cc import connected_components
from .pagerank import (DEFAULT_DAMPING, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE,
                       PageRankConvergenceWarning, pagerank)
from .sssp import DEFAULT_DELTA, DIST_INF, sssp
from .tc import triangle_count, worth_relabelling

__all__ = [
    "KernelError",
    "alloc_solution",
    "allocation_hooks",
    "bfs",
    "sssp",
    "pagerank",
    "connected_components",
    "betweenness",
    "triangle_count",
    "worth_relabelling",
    "warmup",
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "DEFAULT_DELTA",
    "DEFAULT_DAMPING",
    "DEFAULT_TOLERANCE",
    "DEFAULT_MAX_ITERS",
    "DIST_INF",
    "PageRankConvergenceWarning",
]


def warmup():
    """Compile (or load from cache) every kernel on a tiny graph."""
    from ..graph import EdgeList, build_csr

    tri = [(0, 1, 1), (1, 2, 2), (2, 0, 3), (2, 3, 1)]
    und = build_csr(EdgeList.from_tuples(tri), symmetrize=True)
    dirg = build_csr(EdgeList.from_tuples(tri), directed=True)
    for g in (und, dirg):
        bfs(g, 0)
        bfs(g, 0, direction_optimizing=False, encode_degree=False)
        sssp(g, 0)
        pagerank(g)
        connected_components(g)
        betweenness(g, [0])
    triangle_count(und, relabel=False)
    triangle_count(und, relabel=True)
