"""Shiloach-Vishkin connected components.

Alternates a hooking sweep, where every edge whose endpoints carry different
labels attaches the larger root label under the smaller one (atomic min),
with a shortcut sweep that compresses every label chain to its root.  Stops
when a hooking sweep changes nothing.  Hooking looks at both endpoints of
each stored edge, so on directed graphs the result is the weakly connected
components.
"""

import numpy as np
from numba import njit, prange

from ._atomics import atomic_umin
from ._common import alloc_solution


@njit(parallel=True, cache=True)
def _shiloach_vishkin(out_offsets, out_neighbors, comp):
    n = len(comp)
    for v in prange(n):
        comp[v] = v
    sweeps = 0
    changed = 1
    while changed:
        sweeps += 1
        changed = 0
        for u in prange(n):
            for e in range(out_offsets[u], out_offsets[u + 1]):
                v = out_neighbors[e]
                cu = comp[u]
                cv = comp[v]
                if cu == cv:
                    continue
                high = max(cu, cv)
                low = min(cu, cv)
                if comp[high] == high:
                    atomic_umin(comp, high, low)
                    changed += 1
        for v in prange(n):
            while comp[v] != comp[comp[v]]:
                comp[v] = comp[comp[v]]
    return sweeps


def connected_components(g):
    """Component label (a member vertex id) for every vertex, as uint32."""
    comp = alloc_solution("cc.comp", g.num_nodes, np.uint32)
    _shiloach_vishkin(g.out_offsets, g.out_neighbors, comp)
    return comp
