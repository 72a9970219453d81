"""Compressed-sparse-row graphs and the builder that produces them.

Every kernel in the package consumes a :class:`CsrGraph`.  Graphs are built
once from an :class:`EdgeList` (parsed from a file or produced by a
generator) and are read-only afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "GraphBuildError",
    "EdgeList",
    "CsrGraph",
    "Permutation",
    "build_csr",
    "relabel_by_degree",
]

MAX_NODE_ID = (1 << 32) - 1

NODE_DTYPE = np.dtype(np.uint32)
OFFSET_DTYPE = np.dtype(np.int64)
WEIGHT_DTYPE = np.dtype(np.int32)


class GraphBuildError(ValueError):
    """Raised when an edge list cannot be turned into a valid graph."""


@dataclass
class EdgeList:
    """Staging container of ``(src, dst[, weight])`` tuples.

    Stored column-wise.  ``weights`` is ``None`` for unweighted lists.
    ``symmetric`` is a hint set by parsers (Matrix Market ``symmetric``
    headers, METIS) asking the builder to symmetrize; ``num_nodes`` carries
    a vertex count from formats that have a header.
    """

    src: np.ndarray
    dst: np.ndarray
    weights: Optional[np.ndarray] = None
    symmetric: bool = False
    num_nodes: Optional[int] = None

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64).reshape(-1)
        self.dst = np.asarray(self.dst, dtype=np.int64).reshape(-1)
        if self.src.shape != self.dst.shape:
            raise GraphBuildError(
                f"src and dst lengths differ ({len(self.src)} vs {len(self.dst)})")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.int64).reshape(-1)
            if self.weights.shape != self.src.shape:
                raise GraphBuildError(
                    f"{len(self.weights)} weights for {len(self.src)} edges")

    @classmethod
    def from_tuples(cls, edges: Iterable[Sequence[int]], symmetric: bool = False) -> "EdgeList":
        edges = list(edges)
        if not edges:
            return cls(np.empty(0, np.int64), np.empty(0, np.int64))
        arity = {len(e) for e in edges}
        if arity == {2}:
            arr = np.array(edges, dtype=np.int64).reshape(-1, 2)
            return cls(arr[:, 0], arr[:, 1], symmetric=symmetric)
        if arity == {3}:
            arr = np.array(edges, dtype=np.int64).reshape(-1, 3)
            return cls(arr[:, 0], arr[:, 1], arr[:, 2], symmetric=symmetric)
        raise GraphBuildError(
            "edge tuples must all be (src, dst) or all be (src, dst, weight)")

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def __len__(self) -> int:
        return len(self.src)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        if self.weights is None:
            yield from zip(self.src.tolist(), self.dst.tolist())
        else:
            yield from zip(self.src.tolist(), self.dst.tolist(), self.weights.tolist())

    def append(self, src: int, dst: int, weight: Optional[int] = None) -> None:
        if (weight is None) != (self.weights is None):
            raise GraphBuildError("weight presence must match the rest of the edge list")
        self.src = np.append(self.src, src)
        self.dst = np.append(self.dst, dst)
        if weight is not None:
            self.weights = np.append(self.weights, weight)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class CsrGraph:
    """Immutable CSR graph.

    ``m`` (``num_edges``) counts stored directed edges, so an undirected
    edge contributes two.  For undirected graphs the ``in_*`` arrays are
    the very same objects as the ``out_*`` arrays.
    """

    directed: bool
    out_offsets: np.ndarray
    out_neighbors: np.ndarray
    out_weights: Optional[np.ndarray] = None
    in_offsets: np.ndarray = field(default=None)
    in_neighbors: np.ndarray = field(default=None)
    in_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.directed or self.in_offsets is None:
            object.__setattr__(self, "in_offsets", self.out_offsets)
            object.__setattr__(self, "in_neighbors", self.out_neighbors)
            object.__setattr__(self, "in_weights", self.out_weights)
        for name in ("out_offsets", "out_neighbors", "out_weights",
                     "in_offsets", "in_neighbors", "in_weights"):
            arr = getattr(self, name)
            if arr is not None:
                _frozen(arr)

    @property
    def num_nodes(self) -> int:
        return len(self.out_offsets) - 1

    @property
    def num_edges(self) -> int:
        return int(self.out_offsets[-1])

    @property
    def weighted(self) -> bool:
        return self.out_weights is not None

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_offsets)

    def out_degree(self, v: int) -> int:
        return int(self.out_offsets[v + 1] - self.out_offsets[v])

    def out_neigh(self, v: int) -> np.ndarray:
        return self.out_neighbors[self.out_offsets[v]:self.out_offsets[v + 1]]

    def in_neigh(self, v: int) -> np.ndarray:
        return self.in_neighbors[self.in_offsets[v]:self.in_offsets[v + 1]]

    def out_weight(self, v: int) -> np.ndarray:
        return self.out_weights[self.out_offsets[v]:self.out_offsets[v + 1]]

    def to_edge_list(self) -> EdgeList:
        """Flatten the out-adjacency back into an edge list (CSR order)."""
        src = np.repeat(np.arange(self.num_nodes, dtype=np.int64), self.out_degrees())
        w = None if self.out_weights is None else self.out_weights.astype(np.int64)
        return EdgeList(src, self.out_neighbors.astype(np.int64), w)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        w = ", weighted" if self.weighted else ""
        return f"CsrGraph({kind}{w}, n={self.num_nodes}, m={self.num_edges})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``[0, n)``; ``new_id_of[old] == new``."""

    new_id_of: np.ndarray

    def __post_init__(self):
        n = len(self.new_id_of)
        seen = np.zeros(n, dtype=bool)
        if n and (self.new_id_of.min() < 0 or self.new_id_of.max() >= n):
            raise ValueError("permutation entry out of range")
        seen[self.new_id_of] = True
        if not seen.all():
            raise ValueError("not a bijection")

    def old_id_of(self) -> np.ndarray:
        inv = np.empty_like(self.new_id_of)
        inv[self.new_id_of] = np.arange(len(self.new_id_of), dtype=self.new_id_of.dtype)
        return inv


def _offsets_from_sources(src: np.ndarray, n: int) -> np.ndarray:
    counts = np.bincount(src, minlength=n) if len(src) else np.zeros(n, np.int64)
    offsets = np.zeros(n + 1, dtype=OFFSET_DTYPE)
    np.cumsum(counts, out=offsets[1:])
    return offsets


def _sort_and_dedup(src, dst, weights):
    """Sort by (src, dst); keep the first occurrence of each pair."""
    keys = (src.astype(np.uint64) << np.uint64(32)) | dst.astype(np.uint64)
    if weights is None:
        keys = np.unique(keys)
        return (keys >> np.uint64(32)).astype(np.int64), (keys & np.uint64(MAX_NODE_ID)), None
    perm = np.argsort(keys, kind="stable")
    keys = keys[perm]
    keep = np.ones(len(keys), dtype=bool)
    keep[1:] = keys[1:] != keys[:-1]
    keys = keys[keep]
    w = None if weights is None else weights[perm][keep]
    return (keys >> np.uint64(32)).astype(np.int64), (keys & np.uint64(MAX_NODE_ID)), w


def _assemble(src, dst, weights, n, directed) -> CsrGraph:
    out_offsets = _offsets_from_sources(src, n)
    out_neighbors = dst.astype(NODE_DTYPE)
    out_weights = None if weights is None else weights.astype(WEIGHT_DTYPE)
    if not directed:
        return CsrGraph(False, out_offsets, out_neighbors, out_weights)
    # src is already sorted, so a stable sort on dst yields in-lists sorted by src.
    perm = np.argsort(dst, kind="stable")
    in_src = dst[perm].astype(np.int64)
    in_offsets = _offsets_from_sources(in_src, n)
    in_neighbors = src[perm].astype(NODE_DTYPE)
    in_weights = None if out_weights is None else out_weights[perm]
    return CsrGraph(True, out_offsets, out_neighbors, out_weights,
                    in_offsets, in_neighbors, in_weights)


def build_csr(edges: EdgeList, directed: bool = True, symmetrize: bool = False,
              num_nodes: Optional[int] = None) -> CsrGraph:
    """Build a CSR graph from an edge list.

    Self-loops are dropped, duplicate ``(u, v)`` pairs are collapsed keeping
    the first weight, and neighbor lists come out sorted ascending.

    Parameters
    ----------
    edges : EdgeList
        Raw edges, 0-based ids.
    directed : bool
        Build a directed graph (with incoming adjacency).  Ignored when
        ``symmetrize`` is set.
    symmetrize : bool
        Add the reverse of every edge and build an undirected graph.  When
        an undirected pair appears more than once, both stored directions
        keep the weight of the earliest tuple in ``edges``.
    num_nodes : int, optional
        Explicit vertex count; defaults to the largest endpoint id plus one.

    Returns
    -------
    CsrGraph
    """
    if not isinstance(edges, EdgeList):
        raise GraphBuildError(f"expected an EdgeList, got {type(edges).__name__}")
    src, dst, w = edges.src, edges.dst, edges.weights
    if w is not None and len(w) != len(src):
        raise GraphBuildError("weighted flag inconsistent with edge tuples")
    if len(src):
        lo = min(src.min(), dst.min())
        hi = max(src.max(), dst.max())
        if lo < 0:
            raise GraphBuildError(f"negative vertex id {lo}")
        if hi > MAX_NODE_ID:
            raise GraphBuildError(f"vertex id {hi} does not fit in 32 bits")
        inferred = int(hi) + 1
    else:
        inferred = 0
    if num_nodes is None:
        num_nodes = edges.num_nodes
    if num_nodes is None:
        n = inferred
    else:
        n = int(num_nodes)
        if n < inferred:
            raise GraphBuildError(f"num_nodes={n} but edge list references id {inferred - 1}")
        if n > MAX_NODE_ID + 1:
            raise GraphBuildError(f"num_nodes={n} exceeds 32-bit id space")
    if w is not None and len(w) and (w.min() < -(1 << 31) or w.max() >= (1 << 31)):
        raise GraphBuildError("edge weight does not fit in 32 bits")

    if symmetrize or edges.symmetric:
        directed = False
        k = len(src)
        # interleave forward/reverse copies so duplicate-pair resolution is
        # decided by original tuple position, identically for both directions
        s2 = np.empty(2 * k, np.int64)
        d2 = np.empty(2 * k, np.int64)
        s2[0::2], s2[1::2] = src, dst
        d2[0::2], d2[1::2] = dst, src
        src, dst = s2, d2
        if w is not None:
            w = np.repeat(w, 2)

    loops = src == dst
    if loops.any():
        keep = ~loops
        src, dst = src[keep], dst[keep]
        w = None if w is None else w[keep]

    src, dst, w = _sort_and_dedup(src, dst, w)
    return _assemble(src, dst, w, n, directed)


def relabel_by_degree(g: CsrGraph) -> Tuple[CsrGraph, Permutation]:
    """Renumber vertices in non-increasing degree order.

    Ties keep ascending original id.  Returns the relabeled graph and the
    permutation mapping old ids to new ids.
    """
    if g.directed:
        raise ValueError("relabel_by_degree requires an undirected graph")
    n = g.num_nodes
    deg = g.out_degrees()
    order = np.lexsort((np.arange(n), -deg))
    new_id_of = np.empty(n, dtype=np.int64)
    new_id_of[order] = np.arange(n, dtype=np.int64)

    src = new_id_of[np.repeat(np.arange(n, dtype=np.int64), deg)]
    dst = new_id_of[g.out_neighbors]
    keys = (src.astype(np.uint64) << np.uint64(32)) | dst.astype(np.uint64)
    perm = np.argsort(keys)
    keys = keys[perm]
    w = None if g.out_weights is None else g.out_weights[perm]
    src = (keys >> np.uint64(32)).astype(np.int64)
    dst = keys & np.uint64(MAX_NODE_ID)
    return _assemble(src, dst, w, n, False), Permutation(new_id_of)
