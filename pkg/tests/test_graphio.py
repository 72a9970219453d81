import struct

import numpy as np
import pytest

from gapkit import build_csr
from gapkit.graphio import (BadMagicError, GraphFileFormat, GraphFormatError, GraphParseError,
                            SerializationError, TruncatedGraphFileError, VersionMismatchError,
                            format_from_path, load_graph, read_serialized, read_text_graph,
                            write_serialized)
from gapkit.kernels import connected_components
from gapkit.verify import same_partition

from conftest import complete_graph, directed, star_graph


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def assert_same_graph(a, b):
    assert a.directed == b.directed
    assert a.weighted == b.weighted
    for name in ("out_offsets", "out_neighbors", "out_weights",
                 "in_offsets", "in_neighbors", "in_weights"):
        x, y = getattr(a, name), getattr(b, name)
        if x is None:
            assert y is None
        else:
            assert x.dtype == y.dtype
            assert x.tobytes() == y.tobytes()


@pytest.mark.parametrize("suffix, fmt", [
    (".el", GraphFileFormat.EdgeListText),
    (".wel", GraphFileFormat.WeightedEdgeListText),
    (".graph", GraphFileFormat.Metis),
    (".mtx", GraphFileFormat.MatrixMarket),
    (".sg", GraphFileFormat.SerializedBinary),
    (".wsg", GraphFileFormat.SerializedWeightedBinary),
])
def test_format_from_extension(suffix, fmt):
    assert format_from_path("some/graph" + suffix) is fmt


def test_unknown_extension():
    with pytest.raises(GraphFormatError):
        format_from_path("graph.txt")


def test_edge_list(tmp_path):
    el = read_text_graph(write(tmp_path, "g.el", "0 1\n1 2\n"))
    assert list(el) == [(0, 1), (1, 2)]
    assert not el.weighted


def test_weighted_edge_list(tmp_path):
    el = read_text_graph(write(tmp_path, "g.wel", "0 1 5\n"))
    assert list(el) == [(0, 1, 5)]
    assert el.weighted


def test_edge_list_keeps_file_order_and_skips_comments(tmp_path):
    text = "# header\n5 3\n% note\n\n0 9\n5 3\n"
    el = read_text_graph(write(tmp_path, "g.el", text))
    assert list(el) == [(5, 3), (0, 9), (5, 3)]


def test_missing_weight_reports_line(tmp_path):
    with pytest.raises(GraphParseError, match="missing weight") as info:
        read_text_graph(write(tmp_path, "g.wel", "0 1 4\n1 2\n"))
    assert info.value.lineno == 2
    assert str(info.value).endswith("g.wel:2: missing weight field")


def test_negative_id_rejected(tmp_path):
    with pytest.raises(GraphParseError, match="negative") as info:
        read_text_graph(write(tmp_path, "g.el", "-1 2\n"))
    assert info.value.lineno == 1


def test_malformed_line_rejected(tmp_path):
    with pytest.raises(GraphParseError) as info:
        read_text_graph(write(tmp_path, "g.el", "0 1\n1 2\nx 3\n"))
    assert info.value.lineno == 3
    with pytest.raises(GraphParseError):
        read_text_graph(write(tmp_path, "h.el", "0 1 2\n"))


def test_metis(tmp_path):
    el = read_text_graph(write(tmp_path, "g.graph", "3 2\n2\n1 3\n2\n"))
    assert set(el) == {(0, 1), (1, 0), (1, 2), (2, 1)}
    assert el.num_nodes == 3
    g = build_csr(el)
    assert not g.directed
    assert g.num_edges == 4


def test_metis_isolated_vertex_and_edge_weights(tmp_path):
    # fmt 001: edge weights follow each neighbor; vertex 2 has an empty line
    text = "% comment\n3 1 001\n3 7\n\n1 7\n"
    el = read_text_graph(write(tmp_path, "g.graph", text))
    assert list(el) == [(0, 2, 7), (2, 0, 7)]
    assert el.num_nodes == 3


def test_metis_with_vertex_weights(tmp_path):
    text = "2 1 011 2\n4 5 2 9\n1 1 1 9\n"
    el = read_text_graph(write(tmp_path, "g.graph", text))
    assert list(el) == [(0, 1, 9), (1, 0, 9)]


def test_metis_bad_neighbor(tmp_path):
    with pytest.raises(GraphParseError, match="outside"):
        read_text_graph(write(tmp_path, "g.graph", "2 1\n3\n1\n"))


def test_metis_too_few_lines(tmp_path):
    with pytest.raises(GraphParseError, match="expected 3 adjacency lines"):
        read_text_graph(write(tmp_path, "g.graph", "3 1\n2\n1\n"))


def test_matrix_market_pattern_symmetric(tmp_path):
    text = ("%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n"
            "4 4 2\n2 1\n4 3\n")
    el = read_text_graph(write(tmp_path, "g.mtx", text))
    assert list(el) == [(1, 0), (3, 2)]
    assert el.symmetric
    assert el.num_nodes == 4
    g = build_csr(el)
    assert not g.directed
    assert g.out_neigh(0).tolist() == [1]


def test_matrix_market_integer_general(tmp_path):
    text = "%%MatrixMarket matrix coordinate integer general\n3 3 2\n1 2 5\n3 1 8\n"
    el = read_text_graph(write(tmp_path, "g.mtx", text))
    assert list(el) == [(0, 1, 5), (2, 0, 8)]
    assert not el.symmetric


def test_matrix_market_real_values_truncated_with_warning(tmp_path):
    text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 3.75\n"
    with pytest.warns(UserWarning, match="truncated"):
        el = read_text_graph(write(tmp_path, "g.mtx", text))
    assert list(el) == [(0, 1, 3)]


@pytest.mark.parametrize("banner", [
    "%%MatrixMarket matrix array real general",
    "%%MatrixMarket matrix coordinate complex general",
    "%%MatrixMarket matrix coordinate pattern hermitian",
    "not a banner",
])
def test_matrix_market_unsupported(tmp_path, banner):
    with pytest.raises(GraphParseError):
        read_text_graph(write(tmp_path, "g.mtx", banner + "\n2 2 1\n1 2\n"))


def test_matrix_market_entry_count_checked(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern general\n2 2 3\n1 2\n"
    with pytest.raises(GraphParseError, match="promises 3"):
        read_text_graph(write(tmp_path, "g.mtx", text))


def test_round_trip_two_node_graph(tmp_path):
    g = directed([(0, 1)])
    write_serialized(g, tmp_path / "g.sg")
    assert_same_graph(read_serialized(tmp_path / "g.sg"), g)


def test_round_trip_weighted(tmp_path):
    g = directed([(0, 1, 3), (1, 2, 200), (2, 0, 17)])
    write_serialized(g, tmp_path / "g.wsg")
    back = read_serialized(tmp_path / "g.wsg")
    assert_same_graph(back, g)
    assert back.out_weights.tolist() == [3, 200, 17]


def test_round_trip_undirected_stores_one_adjacency(tmp_path):
    g = star_graph(3)
    path = tmp_path / "star.sg"
    write_serialized(g, path)
    n, m = g.num_nodes, g.num_edges
    assert path.stat().st_size == struct.calcsize("<4sBBQQ") + 8 * (n + 1) + 4 * m
    back = read_serialized(path)
    assert_same_graph(back, g)
    assert back.in_neighbors is back.out_neighbors


def test_header_layout(tmp_path):
    g = directed([(0, 1, 4)])
    write_serialized(g, tmp_path / "g.wsg")
    raw = (tmp_path / "g.wsg").read_bytes()
    magic, version, flags, n, m = struct.unpack_from("<4sBBQQ", raw)
    assert (magic, version, flags, n, m) == (b"GAPB", 1, 3, 2, 1)


def test_round_trip_kron_and_cc(tmp_path, kron10, kron10_weighted, kron10_directed):
    for i, g in enumerate((kron10, kron10_weighted, kron10_directed)):
        path = tmp_path / f"g{i}.sg"
        write_serialized(g, path)
        back = read_serialized(path)
        assert_same_graph(back, g)
    assert same_partition(connected_components(back), connected_components(kron10_directed))


def test_bad_magic(tmp_path):
    p = tmp_path / "g.sg"
    p.write_bytes(b"NOPE" + bytes(30))
    with pytest.raises(BadMagicError):
        read_serialized(p)


def test_version_mismatch(tmp_path):
    p = tmp_path / "g.sg"
    write_serialized(complete_graph(3), p)
    raw = bytearray(p.read_bytes())
    raw[4] = 2
    p.write_bytes(bytes(raw))
    with pytest.raises(VersionMismatchError):
        read_serialized(p)


def test_truncated_arrays(tmp_path):
    p = tmp_path / "g.sg"
    write_serialized(complete_graph(4), p)
    p.write_bytes(p.read_bytes()[:-3])
    with pytest.raises(TruncatedGraphFileError):
        read_serialized(p)
    p.write_bytes(b"GAPB\x01")
    with pytest.raises(TruncatedGraphFileError):
        read_serialized(p)


def test_trailing_bytes(tmp_path):
    p = tmp_path / "g.sg"
    write_serialized(complete_graph(3), p)
    p.write_bytes(p.read_bytes() + b"\0")
    with pytest.raises(SerializationError):
        read_serialized(p)


def test_load_graph_el_and_sg_agree(tmp_path):
    el = write(tmp_path, "tiny.el", "0 1\n1 2\n3 4\n")
    g_text = load_graph(el)
    write_serialized(g_text, tmp_path / "tiny.sg")
    g_bin = load_graph(tmp_path / "tiny.sg")
    assert_same_graph(g_text, g_bin)
    assert same_partition(connected_components(g_text), connected_components(g_bin))


def test_load_graph_symmetrize(tmp_path):
    el = write(tmp_path, "g.el", "0 1\n")
    assert load_graph(el).directed
    assert not load_graph(el, symmetrize=True).directed
    write_serialized(load_graph(el), tmp_path / "g.sg")
    g = load_graph(tmp_path / "g.sg", symmetrize=True)
    assert not g.directed
    assert np.array_equal(g.out_neigh(1), [0])
