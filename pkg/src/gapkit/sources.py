"""Deterministic selection of non-zero-degree source vertices."""

from __future__ import annotations

from typing import List

from .generate import DEFAULT_SEED, TAG_SOURCES, philox_stream
from .graph import CsrGraph

__all__ = ["SourcePicker", "pick_sources"]

_DRAW_BATCH = 64


class SourcePicker:
    """Draw vertices uniformly from ``[0, n)``, rejecting zero out-degree.

    Each raw 64-bit Philox draw ``x`` maps to ``(x * n) >> 64``.  The
    sequence depends only on the seed and the graph.
    """

    def __init__(self, g: CsrGraph, seed: int = DEFAULT_SEED):
        self.g = g
        self.seed = seed
        self.cursor = 0
        self._degrees = g.out_degrees()
        if g.num_nodes == 0 or not self._degrees.any():
            raise ValueError("graph has no vertex with non-zero out-degree")
        self._stream = philox_stream(seed, TAG_SOURCES)
        self._buffer: List[int] = []

    def _draw(self) -> int:
        if not self._buffer:
            self._buffer = self._stream.random_raw(_DRAW_BATCH).tolist()[::-1]
        return self._buffer.pop()

    def pick_next(self) -> int:
        n = self.g.num_nodes
        while True:
            v = (self._draw() * n) >> 64
            self.cursor += 1
            if self._degrees[v] != 0:
                return v

    def pick(self, count: int) -> List[int]:
        return [self.pick_next() for _ in range(count)]


def pick_sources(g: CsrGraph, count: int, seed: int = DEFAULT_SEED) -> List[int]:
    return SourcePicker(g, seed).pick(count)
