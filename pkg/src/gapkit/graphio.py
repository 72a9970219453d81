"""Reading and writing graph files.

Text formats (``.el``, ``.wel``, ``.graph``, ``.mtx``) parse into an
:class:`~gapkit.graph.EdgeList`.  Built graphs can be serialized to a
compact little-endian binary (``.sg`` / ``.wsg``) and loaded back without
running the builder again.

Binary layout::

    "GAPB"  u8 version  u8 flags(bit0 directed, bit1 weighted)  u64 n  u64 m
    out_offsets (n+1) x u64, out_neighbors m x u32, [out_weights m x i32]
    if directed: in_offsets (n+1) x u64, in_neighbors m x u32, [in_weights m x i32]
"""

from __future__ import annotations

import enum
import os
import struct
import warnings
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .graph import CsrGraph, EdgeList, build_csr

__all__ = [
    "GraphFileFormat",
    "GraphParseError",
    "GraphFormatError",
    "SerializationError",
    "BadMagicError",
    "VersionMismatchError",
    "TruncatedGraphFileError",
    "format_from_path",
    "read_text_graph",
    "write_serialized",
    "read_serialized",
    "load_graph",
]

PathLike = Union[str, os.PathLike]

MAGIC = b"GAPB"
VERSION = 1
_HEADER = struct.Struct("<4sBBQQ")
_FLAG_DIRECTED = 0x1
_FLAG_WEIGHTED = 0x2


class GraphFileFormat(enum.Enum):
    EdgeListText = ".el"
    WeightedEdgeListText = ".wel"
    Metis = ".graph"
    MatrixMarket = ".mtx"
    SerializedBinary = ".sg"
    SerializedWeightedBinary = ".wsg"

    @property
    def serialized(self) -> bool:
        return self in (GraphFileFormat.SerializedBinary,
                        GraphFileFormat.SerializedWeightedBinary)


class GraphFormatError(ValueError):
    """Unknown or unsupported file format."""


class GraphParseError(ValueError):
    """Malformed text graph file."""

    def __init__(self, path, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")


class SerializationError(ValueError):
    """Base class for binary graph load failures."""


class BadMagicError(SerializationError):
    pass


class VersionMismatchError(SerializationError):
    pass


class TruncatedGraphFileError(SerializationError):
    pass


def format_from_path(path: PathLike) -> GraphFileFormat:
    suffix = Path(path).suffix.lower()
    for fmt in GraphFileFormat:
        if fmt.value == suffix:
            return fmt
    raise GraphFormatError(f"cannot determine graph format from extension {suffix!r} ({path})")


def _parse_int(token: str, path, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphParseError(path, lineno, f"{what} {token!r} is not an integer") from None
    return value


def _read_edge_list(path, weighted: bool) -> EdgeList:
    ncols = 3 if weighted else 2
    src, dst, wts = [], [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            tokens = line.split()
            if not tokens or tokens[0][0] in "%#":
                continue
            if len(tokens) < ncols:
                if weighted and len(tokens) == 2:
                    raise GraphParseError(path, lineno, "missing weight field")
                raise GraphParseError(path, lineno, f"expected {ncols} fields, got {len(tokens)}")
            if len(tokens) > ncols:
                raise GraphParseError(path, lineno, f"expected {ncols} fields, got {len(tokens)}")
            u = _parse_int(tokens[0], path, lineno, "vertex id")
            v = _parse_int(tokens[1], path, lineno, "vertex id")
            if u < 0 or v < 0:
                raise GraphParseError(path, lineno, "negative vertex id")
            src.append(u)
            dst.append(v)
            if weighted:
                wts.append(_parse_int(tokens[2], path, lineno, "weight"))
    return EdgeList(np.array(src, np.int64), np.array(dst, np.int64),
                    np.array(wts, np.int64) if weighted else None)


def _content_lines(fh):
    for lineno, line in enumerate(fh, 1):
        if line.lstrip().startswith("%"):
            continue
        yield lineno, line


def _read_metis(path) -> EdgeList:
    with open(path) as fh:
        lines = _content_lines(fh)
        try:
            lineno, header = next(lines)
            while not header.strip():
                lineno, header = next(lines)
        except StopIteration:
            raise GraphParseError(path, 1, "missing METIS header") from None
        fields = header.split()
        if len(fields) < 2:
            raise GraphParseError(path, lineno, "METIS header needs at least 'n m'")
        n = _parse_int(fields[0], path, lineno, "vertex count")
        _parse_int(fields[1], path, lineno, "edge count")
        fmt = fields[2] if len(fields) > 2 else "0"
        fmt = fmt.rjust(3, "0")
        if len(fmt) != 3 or any(c not in "01" for c in fmt):
            raise GraphParseError(path, lineno, f"bad METIS fmt field {fields[2]!r}")
        has_vsize, has_vwgt, has_ewgt = (c == "1" for c in fmt)
        ncon = _parse_int(fields[3], path, lineno, "ncon") if len(fields) > 3 else 1
        skip = int(has_vsize) + (ncon if has_vwgt else 0)
        step = 2 if has_ewgt else 1

        src, dst, wts = [], [], []
        u = 0
        for lineno, line in lines:
            if u >= n:
                if line.strip():
                    raise GraphParseError(path, lineno, f"more than {n} adjacency lines")
                continue
            tokens = line.split()[skip:]
            if len(tokens) % step:
                raise GraphParseError(path, lineno, "neighbor without weight")
            for i in range(0, len(tokens), step):
                v = _parse_int(tokens[i], path, lineno, "neighbor id")
                if v < 1 or v > n:
                    raise GraphParseError(path, lineno, f"neighbor id {v} outside 1..{n}")
                src.append(u)
                dst.append(v - 1)
                if has_ewgt:
                    wts.append(_parse_int(tokens[i + 1], path, lineno, "edge weight"))
            u += 1
        if u < n:
            raise GraphParseError(path, lineno if u else 1, f"expected {n} adjacency lines, found {u}")
    return EdgeList(np.array(src, np.int64), np.array(dst, np.int64),
                    np.array(wts, np.int64) if has_ewgt else None,
                    symmetric=True, num_nodes=n)


def _read_matrix_market(path) -> EdgeList:
    with open(path) as fh:
        banner = fh.readline()
        parts = banner.lower().split()
        if len(parts) != 5 or parts[0] != "%%matrixmarket" or parts[1] != "matrix":
            raise GraphParseError(path, 1, "missing %%MatrixMarket matrix banner")
        layout, field, symmetry = parts[2:]
        if layout != "coordinate":
            raise GraphParseError(path, 1, f"only coordinate matrices are supported, not {layout}")
        if field not in ("pattern", "integer", "real"):
            raise GraphParseError(path, 1, f"unsupported field type {field}")
        if symmetry not in ("general", "symmetric"):
            raise GraphParseError(path, 1, f"unsupported symmetry {symmetry}")
        weighted = field != "pattern"

        size = None
        src, dst, wts = [], [], []
        truncated = False
        for lineno, line in enumerate(fh, 2):
            tokens = line.split()
            if not tokens or tokens[0].startswith("%"):
                continue
            if size is None:
                if len(tokens) != 3:
                    raise GraphParseError(path, lineno, "size line must be 'rows cols entries'")
                size = [_parse_int(t, path, lineno, "size") for t in tokens]
                continue
            want = 3 if weighted else 2
            if len(tokens) != want:
                raise GraphParseError(path, lineno, f"expected {want} fields, got {len(tokens)}")
            i = _parse_int(tokens[0], path, lineno, "row index")
            j = _parse_int(tokens[1], path, lineno, "column index")
            if i < 1 or j < 1:
                raise GraphParseError(path, lineno, "Matrix Market indices are 1-based")
            src.append(i - 1)
            dst.append(j - 1)
            if weighted:
                if field == "integer":
                    wts.append(_parse_int(tokens[2], path, lineno, "value"))
                else:
                    try:
                        x = float(tokens[2])
                    except ValueError:
                        raise GraphParseError(path, lineno, f"value {tokens[2]!r} is not a number") from None
                    if x != int(x):
                        truncated = True
                    wts.append(int(x))
        if size is None:
            raise GraphParseError(path, 1, "missing size line")
        if len(src) != size[2]:
            raise GraphParseError(path, lineno, f"header promises {size[2]} entries, found {len(src)}")
    if truncated:
        warnings.warn(f"{path}: real-valued weights truncated to integers", stacklevel=3)
    return EdgeList(np.array(src, np.int64), np.array(dst, np.int64),
                    np.array(wts, np.int64) if weighted else None,
                    symmetric=symmetry == "symmetric", num_nodes=max(size[0], size[1]))


def read_text_graph(path: PathLike, format: Optional[GraphFileFormat] = None) -> EdgeList:
    """Parse a text graph file into an edge list with 0-based ids.

    METIS and Matrix Market ids are shifted down by one.  Lines starting
    with ``%`` (and ``#`` for edge lists) are skipped.
    """
    fmt = format_from_path(path) if format is None else format
    if fmt is GraphFileFormat.EdgeListText:
        return _read_edge_list(path, weighted=False)
    if fmt is GraphFileFormat.WeightedEdgeListText:
        return _read_edge_list(path, weighted=True)
    if fmt is GraphFileFormat.Metis:
        return _read_metis(path)
    if fmt is GraphFileFormat.MatrixMarket:
        return _read_matrix_market(path)
    raise GraphFormatError(f"{fmt.name} is not a text format")


def write_serialized(g: CsrGraph, path: PathLike) -> None:
    flags = (_FLAG_DIRECTED if g.directed else 0) | (_FLAG_WEIGHTED if g.weighted else 0)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, flags, g.num_nodes, g.num_edges))
        fh.write(g.out_offsets.astype("<u8").tobytes())
        fh.write(g.out_neighbors.astype("<u4").tobytes())
        if g.weighted:
            fh.write(g.out_weights.astype("<i4").tobytes())
        if g.directed:
            fh.write(g.in_offsets.astype("<u8").tobytes())
            fh.write(g.in_neighbors.astype("<u4").tobytes())
            if g.weighted:
                fh.write(g.in_weights.astype("<i4").tobytes())


def read_serialized(path: PathLike) -> CsrGraph:
    data = Path(path).read_bytes()
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError(f"{path}: not a serialized graph (bad magic)")
    if len(data) < _HEADER.size:
        raise TruncatedGraphFileError(f"{path}: header truncated")
    _, version, flags, n, m = _HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatchError(f"{path}: format version {version}, expected {VERSION}")
    directed = bool(flags & _FLAG_DIRECTED)
    weighted = bool(flags & _FLAG_WEIGHTED)

    pos = _HEADER.size

    def take(dtype, count, what):
        nonlocal pos
        nbytes = np.dtype(dtype).itemsize * count
        if pos + nbytes > len(data):
            raise TruncatedGraphFileError(
                f"{path}: {what} truncated (need {nbytes} bytes at offset {pos}, "
                f"file has {len(data)})")
        arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
        pos += nbytes
        return arr

    out_offsets = take("<u8", n + 1, "out_offsets").astype(np.int64)
    out_neighbors = take("<u4", m, "out_neighbors").astype(np.uint32)
    out_weights = take("<i4", m, "out_weights").astype(np.int32) if weighted else None
    in_offsets = in_neighbors = in_weights = None
    if directed:
        in_offsets = take("<u8", n + 1, "in_offsets").astype(np.int64)
        in_neighbors = take("<u4", m, "in_neighbors").astype(np.uint32)
        in_weights = take("<i4", m, "in_weights").astype(np.int32) if weighted else None
    if pos != len(data):
        raise SerializationError(f"{path}: {len(data) - pos} unexpected trailing bytes")
    if out_offsets[-1] != m:
        raise SerializationError(f"{path}: offsets end at {out_offsets[-1]}, header says m={m}")
    return CsrGraph(directed, out_offsets, out_neighbors, out_weights,
                    in_offsets, in_neighbors, in_weights)


def load_graph(path: PathLike, symmetrize: bool = False) -> CsrGraph:
    """Load any supported file, building text formats into a CSR graph."""
    fmt = format_from_path(path)
    if fmt.serialized:
        g = read_serialized(path)
        if symmetrize and g.directed:
            return build_csr(g.to_edge_list(), symmetrize=True, num_nodes=g.num_nodes)
        return g
    edges = read_text_graph(path, fmt)
    return build_csr(edges, directed=True, symmetrize=symmetrize)
