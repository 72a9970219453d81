"""Deterministic synthetic graphs: Kronecker (kron) and uniform random (urand).

Edge ``i`` of a generated list is a pure function of ``(seed, i)``.  Edge
indices are grouped into blocks of :data:`BLOCK_SIZE`; each block draws from
its own Philox4x64-10 stream, keyed by ``(seed, stream tag)`` with the block
index in the upper counter word.  Workers own disjoint block ranges and write
into preallocated output slices, so the result does not depend on how many
workers were used.

Raw 64-bit draws are turned into numbers by explicit integer arithmetic
(never by library distribution helpers) so the mapping is fully specified:

* uniform double in [0, 1): ``(raw >> 11) * 2**-53``
* vertex id in [0, 2**scale): ``raw >> (64 - scale)``
* weight in [1, 255]: ``1 + (((raw >> 32) * 255) >> 32)``
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit

from .graph import EdgeList

__all__ = [
    "GenKind",
    "GenSpec",
    "BLOCK_SIZE",
    "DEFAULT_SEED",
    "KRON_A",
    "KRON_B",
    "KRON_C",
    "KRON_D",
    "generate",
    "generate_uniform",
    "generate_kronecker",
    "assign_weights",
    "philox_stream",
]

BLOCK_SIZE = 1024
DEFAULT_SEED = 8_675_309
MAX_SCALE = 31

KRON_A, KRON_B, KRON_C, KRON_D = 0.57, 0.19, 0.19, 0.05

# stream tags keep the different consumers of one seed independent
TAG_UNIFORM = 1
TAG_KRONECKER = 2
TAG_WEIGHTS = 3
TAG_SOURCES = 4

_MASK64 = (1 << 64) - 1
_TWO_NEG53 = 2.0 ** -53
# blocks handled per vectorized batch; bounds scratch memory for kron
_BATCH_BLOCKS = 64


class GenKind(enum.Enum):
    Kronecker = "kron"
    UniformRandom = "urand"


@dataclass(frozen=True)
class GenSpec:
    kind: GenKind
    scale: int
    avg_degree: int = 16
    seed: int = DEFAULT_SEED

    @property
    def num_nodes(self) -> int:
        return 1 << self.scale

    @property
    def num_edges(self) -> int:
        return self.avg_degree << self.scale


def philox_stream(seed: int, tag: int, block: int = 0) -> np.random.Philox:
    """Philox4x64 bit generator for ``(seed, tag)``, positioned at ``block``."""
    key = np.array([seed & _MASK64, tag], dtype=np.uint64)
    counter = np.array([0, 0, block & _MASK64, 0], dtype=np.uint64)
    return np.random.Philox(key=key, counter=counter)


def _check(spec: GenSpec, kind: GenKind) -> None:
    if spec.kind is not kind:
        raise ValueError(f"expected a {kind.name} spec, got {spec.kind.name}")
    if not 0 <= spec.scale <= MAX_SCALE:
        raise ValueError(f"scale must be in [0, {MAX_SCALE}], got {spec.scale}")
    if spec.avg_degree < 1:
        raise ValueError(f"avg_degree must be positive, got {spec.avg_degree}")


def _block_raws(seed: int, tag: int, first_block: int, num_edges: int, start: int,
                stop: int, per_edge: int) -> np.ndarray:
    """Raw draws for edges ``[start, stop)`` as a ``(stop-start, per_edge)`` array."""
    out = np.empty((stop - start, per_edge), dtype=np.uint64)
    row = 0
    block = first_block
    while row < stop - start:
        count = min(BLOCK_SIZE, num_edges - block * BLOCK_SIZE)
        out[row:row + count] = philox_stream(seed, tag, block).random_raw(
            count * per_edge).reshape(count, per_edge)
        row += count
        block += 1
    return out


def _run_blocks(num_edges: int, workers: int,
                fill: Callable[[int, int, int], None]) -> None:
    """Call ``fill(first_block, start, stop)`` over batches of blocks.

    Blocks are split into ``workers`` contiguous ranges processed
    concurrently; each call writes only its own ``[start, stop)`` slice.
    """
    num_blocks = -(-num_edges // BLOCK_SIZE)
    workers = max(1, min(workers, num_blocks)) if num_blocks else 1

    def worker(w: int) -> None:
        lo = num_blocks * w // workers
        hi = num_blocks * (w + 1) // workers
        for b in range(lo, hi, _BATCH_BLOCKS):
            b_end = min(hi, b + _BATCH_BLOCKS)
            fill(b, b * BLOCK_SIZE, min(num_edges, b_end * BLOCK_SIZE))

    if workers == 1:
        worker(0)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(worker, range(workers)))


def generate_uniform(spec: GenSpec, workers: int = 1) -> EdgeList:
    """Erdos-Renyi style edge tuples, endpoints uniform over ``[0, 2**scale)``."""
    _check(spec, GenKind.UniformRandom)
    m = spec.num_edges
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    shift = np.uint64(64 - spec.scale) if spec.scale else None

    def fill(first_block, start, stop):
        raws = _block_raws(spec.seed, TAG_UNIFORM, first_block, m, start, stop, 2)
        if shift is None:
            src[start:stop] = 0
            dst[start:stop] = 0
        else:
            src[start:stop] = raws[:, 0] >> shift
            dst[start:stop] = raws[:, 1] >> shift

    _run_blocks(m, workers, fill)
    return EdgeList(src, dst, num_nodes=spec.num_nodes)


@njit(cache=True)
def _kron_ids(raws, src, dst):
    ab = KRON_A + KRON_B
    abc = ab + KRON_C
    for i in range(raws.shape[0]):
        s = 0
        d = 0
        for level in range(raws.shape[1]):
            p = (raws[i, level] >> np.uint64(11)) * _TWO_NEG53
            # quadrants A=(0,0) B=(0,1) C=(1,0) D=(1,1)
            s = (s << 1) | (p >= ab)
            d = (d << 1) | ((p >= KRON_A) ^ (p >= ab) ^ (p >= abc))
        src[i] = s
        dst[i] = d


def generate_kronecker(spec: GenSpec, workers: int = 1) -> EdgeList:
    """Kronecker (R-MAT) edge tuples with quadrant probabilities 0.57/0.19/0.19/0.05.

    Each tuple makes ``scale`` quadrant choices, most significant bit first.
    """
    _check(spec, GenKind.Kronecker)
    m = spec.num_edges
    scale = spec.scale
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)

    def fill(first_block, start, stop):
        if scale == 0:
            src[start:stop] = 0
            dst[start:stop] = 0
            return
        raws = _block_raws(spec.seed, TAG_KRONECKER, first_block, m, start, stop, scale)
        _kron_ids(raws, src[start:stop], dst[start:stop])

    _run_blocks(m, workers, fill)
    return EdgeList(src, dst, num_nodes=spec.num_nodes)


def generate(spec: GenSpec, workers: int = 1) -> EdgeList:
    if spec.kind is GenKind.Kronecker:
        return generate_kronecker(spec, workers)
    return generate_uniform(spec, workers)


def assign_weights(edges: EdgeList, seed: int = DEFAULT_SEED, workers: int = 1) -> EdgeList:
    """Return a weighted copy of ``edges`` with weights uniform in [1, 255].

    The weight of tuple ``i`` depends only on ``(seed, i)``.  Both stored
    directions of an undirected edge get the same weight because weights
    are attached before the builder symmetrizes.
    """
    if edges.weighted:
        raise ValueError("edge list is already weighted")
    k = len(edges)
    weights = np.empty(k, dtype=np.int64)

    def fill(first_block, start, stop):
        raws = _block_raws(seed, TAG_WEIGHTS, first_block, k, start, stop, 1)[:, 0]
        weights[start:stop] = 1 + (((raws >> np.uint64(32)) * np.uint64(255)) >> np.uint64(32))

    _run_blocks(k, workers, fill)
    return EdgeList(edges.src.copy(), edges.dst.copy(), weights,
                    symmetric=edges.symmetric, num_nodes=edges.num_nodes)
