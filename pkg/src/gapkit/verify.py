"""Correctness checks for kernel outputs.

Every checker relies on a deliberately simple serial oracle that does not
share code or bookkeeping with the kernel it checks.  BFS, PR and CC outputs
are tested for the properties of a correct solution; SSSP, BC and TC outputs
are compared with an alternate implementation.  Oracles are unoptimized and
meant for desk-scale graphs.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .graph import CsrGraph
from .kernels.sssp import DIST_INF

__all__ = [
    "VerifyReport",
    "verify_bfs",
    "verify_sssp",
    "verify_pr",
    "verify_cc",
    "verify_bc",
    "verify_tc",
    "serial_bfs_depths",
    "dijkstra",
    "pagerank_push_step",
    "union_find_labels",
    "serial_brandes",
    "triangles_by_set_intersection",
    "same_partition",
]


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failure_detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "VerifyReport":
        return cls(True)

    @classmethod
    def failed(cls, detail: str) -> "VerifyReport":
        return cls(False, detail)


def _adjacency(offsets: np.ndarray, neighbors: np.ndarray) -> List[List[int]]:
    nbrs = neighbors.tolist()
    off = offsets.tolist()
    return [nbrs[off[v]:off[v + 1]] for v in range(len(off) - 1)]


# --- oracles -------------------------------------------------------------

def serial_bfs_depths(g: CsrGraph, source: int) -> List[int]:
    """Depth of every vertex from ``source`` (-1 if unreachable)."""
    adj = _adjacency(g.out_offsets, g.out_neighbors)
    depth = [-1] * g.num_nodes
    depth[source] = 0
    todo = deque([source])
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                todo.append(v)
    return depth


def dijkstra(g: CsrGraph, source: int) -> np.ndarray:
    adj = _adjacency(g.out_offsets, g.out_neighbors)
    wts = _adjacency(g.out_offsets, g.out_weights)
    dist = [DIST_INF] * g.num_nodes
    dist[source] = 0
    heap = [(0, source)]
    done = [False] * g.num_nodes
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in zip(adj[u], wts[u]):
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return np.array(dist, dtype=np.int64)


def pagerank_push_step(g: CsrGraph, scores: np.ndarray, damping: float = 0.85) -> np.ndarray:
    """One classical PageRank iteration, scattering along out-edges."""
    n = g.num_nodes
    scores = np.asarray(scores, dtype=np.float64)
    adj = _adjacency(g.out_offsets, g.out_neighbors)
    incoming = [0.0] * n
    for u in range(n):
        if adj[u]:
            share = scores[u] / len(adj[u])
            for v in adj[u]:
                incoming[v] += share
    return (1.0 - damping) / n + damping * np.array(incoming)


def union_find_labels(g: CsrGraph) -> np.ndarray:
    """Component representative per vertex, ignoring edge direction."""
    parent = list(range(g.num_nodes))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    adj = _adjacency(g.out_offsets, g.out_neighbors)
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    return np.array([find(v) for v in range(g.num_nodes)], dtype=np.int64)


def serial_brandes(g: CsrGraph, sources: Sequence[int]) -> np.ndarray:
    """Brandes with explicit predecessor lists and a stack of visited vertices.

    Same conventions as the kernel: a source adds nothing to its own score and
    the summed scores are divided by their maximum.
    """
    n = g.num_nodes
    adj = _adjacency(g.out_offsets, g.out_neighbors)
    bc = [0.0] * n
    for s in sources:
        stack = []
        preds = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        todo = deque([s])
        while todo:
            v = todo.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    todo.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    out = np.array(bc, dtype=np.float64)
    top = out.max() if n else 0.0
    return out / top if top > 0 else out


def triangles_by_set_intersection(g: CsrGraph) -> int:
    """Sum of |N(u) & N(v)| over all stored edges, divided by six."""
    sets = [set(nbrs) for nbrs in _adjacency(g.out_offsets, g.out_neighbors)]
    total = 0
    for u, su in enumerate(sets):
        for v in su:
            total += len(su & sets[v])
    return total // 6


def same_partition(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when two labelings induce the same partition of the vertices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    fwd, bwd = {}, {}
    for x, y in zip(a.tolist(), b.tolist()):
        if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
            return False
    return True


# --- checkers ------------------------------------------------------------

def verify_bfs(g: CsrGraph, source: int, tree: np.ndarray) -> VerifyReport:
    n = g.num_nodes
    tree = np.asarray(tree)
    if tree.shape != (n,):
        return VerifyReport.failed(f"parent array has shape {tree.shape}, expected ({n},)")
    if tree[source] != source:
        return VerifyReport.failed(f"parent[source={source}] = {tree[source]}, expected {source}")
    depth = serial_bfs_depths(g, source)
    adj = _adjacency(g.out_offsets, g.out_neighbors)
    parent = tree.tolist()
    for v in range(n):
        p = parent[v]
        reached = depth[v] >= 0
        if p == -1:
            if reached:
                return VerifyReport.failed(
                    f"reachability mismatch: vertex {v} is reachable (depth {depth[v]}) "
                    f"but parent is -1")
            continue
        if not reached:
            return VerifyReport.failed(
                f"reachability mismatch: vertex {v} is unreachable but parent is {p}")
        if v == source:
            continue
        if not 0 <= p < n:
            return VerifyReport.failed(f"parent[{v}] = {p} is not a vertex")
        if v not in adj[p]:
            return VerifyReport.failed(f"missing edge ({p},{v}) for parent[{v}] = {p}")
        if depth[v] != depth[p] + 1:
            return VerifyReport.failed(
                f"depth[{v}] = {depth[v]} but its parent {p} has depth {depth[p]}")
    return VerifyReport.passed()


def verify_sssp(g: CsrGraph, source: int, dist: np.ndarray) -> VerifyReport:
    expected = dijkstra(g, source)
    dist = np.asarray(dist)
    if dist.shape != expected.shape:
        return VerifyReport.failed(f"distance array has shape {dist.shape}, expected {expected.shape}")
    wrong = np.flatnonzero(dist.astype(np.int64) != expected)
    if len(wrong):
        v = int(wrong[0])
        return VerifyReport.failed(
            f"distance mismatch at vertex {v}: got {int(dist[v])}, expected {int(expected[v])} "
            f"({len(wrong)} mismatches)")
    return VerifyReport.passed()


def verify_pr(g: CsrGraph, scores: np.ndarray, tolerance: float = 1e-4,
              damping: float = 0.85) -> VerifyReport:
    scores = np.asarray(scores, dtype=np.float64)
    if scores.shape != (g.num_nodes,):
        return VerifyReport.failed(f"score array has shape {scores.shape}")
    change = float(np.abs(pagerank_push_step(g, scores, damping) - scores).sum())
    if change < tolerance:
        return VerifyReport.passed()
    return VerifyReport.failed(f"one more iteration changes scores by {change:.3g} >= {tolerance:g}")


def verify_cc(g: CsrGraph, labels: np.ndarray) -> VerifyReport:
    n = g.num_nodes
    labels = np.asarray(labels).tolist()
    if len(labels) != n:
        return VerifyReport.failed(f"label array has length {len(labels)}, expected {n}")
    out_adj = _adjacency(g.out_offsets, g.out_neighbors)
    in_adj = _adjacency(g.in_offsets, g.in_neighbors) if g.directed else None
    representative = {}
    for v, lab in enumerate(labels):
        representative.setdefault(lab, v)
    visited = [False] * n
    for lab, start in representative.items():
        visited[start] = True
        todo = deque([start])
        while todo:
            u = todo.popleft()
            nbrs = out_adj[u] if in_adj is None else out_adj[u] + in_adj[u]
            for v in nbrs:
                if labels[v] != lab:
                    return VerifyReport.failed(
                        f"traversal of label {lab} from {start} reached vertex {v} "
                        f"labelled {labels[v]}")
                if not visited[v]:
                    visited[v] = True
                    todo.append(v)
    if not all(visited):
        v = visited.index(False)
        return VerifyReport.failed(
            f"vertex {v} (label {labels[v]}) not reached by any traversal; "
            f"its label is shared with another component")
    return VerifyReport.passed()


def verify_bc(g: CsrGraph, sources: Sequence[int], scores: np.ndarray,
              tolerance: float = 1e-4) -> VerifyReport:
    expected = serial_brandes(g, list(sources))
    scores = np.asarray(scores, dtype=np.float64)
    if scores.shape != expected.shape:
        return VerifyReport.failed(f"score array has shape {scores.shape}")
    diff = np.abs(scores - expected)
    worst = int(np.argmax(diff)) if len(diff) else 0
    if len(diff) and diff[worst] >= tolerance:
        return VerifyReport.failed(
            f"score of vertex {worst} is {scores[worst]:.6g}, expected {expected[worst]:.6g}")
    return VerifyReport.passed()


def verify_tc(g: CsrGraph, count: int) -> VerifyReport:
    expected = triangles_by_set_intersection(g)
    if int(count) == expected:
        return VerifyReport.passed()
    return VerifyReport.failed(f"triangle count {count}, expected {expected}")
