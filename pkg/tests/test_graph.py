import numpy as np
import pytest

from gapkit import CsrGraph, EdgeList, GraphBuildError, Permutation, build_csr, relabel_by_degree
from gapkit.kernels import connected_components, triangle_count
from gapkit.verify import triangles_by_set_intersection, union_find_labels

from conftest import complete_graph, directed, ring_graph, star_graph, undirected


def test_single_directed_edge():
    g = directed([(0, 1)])
    assert g.directed
    assert g.num_nodes == 2
    assert g.out_offsets.tolist() == [0, 1, 1]
    assert g.out_neighbors.tolist() == [1]
    assert g.in_offsets.tolist() == [0, 0, 1]
    assert g.in_neighbors.tolist() == [0]


def test_duplicates_and_self_loops_removed():
    g = undirected([(0, 1), (0, 1), (1, 1)])
    assert g.num_nodes == 2
    assert g.out_neigh(0).tolist() == [1]
    assert g.out_neigh(1).tolist() == [0]
    assert g.num_edges == 2


def test_symmetrized_triangle_degrees():
    g = undirected([(0, 1), (1, 2), (2, 0)])
    assert g.out_degrees().tolist() == [2, 2, 2]


def test_undirected_aliases_incoming_arrays():
    g = undirected([(0, 1), (1, 2)])
    assert g.in_offsets is g.out_offsets
    assert g.in_neighbors is g.out_neighbors


def test_neighbors_sorted_and_offsets_64bit():
    g = directed([(0, 5), (0, 2), (0, 9), (3, 0)])
    assert g.out_neigh(0).tolist() == [2, 5, 9]
    assert g.out_offsets.dtype == np.int64
    assert g.out_neighbors.dtype == np.uint32


def test_first_weight_kept_for_duplicates():
    g = directed([(0, 1, 7), (0, 1, 3), (1, 0, 4)])
    assert g.out_weight(0).tolist() == [7]
    assert g.in_weights[g.in_offsets[1]] == 7


def test_first_weight_kept_in_both_directions_when_symmetrizing():
    # (1,0,9) comes first, so both stored directions of {0,1} carry 9
    g = build_csr(EdgeList.from_tuples([(1, 0, 9), (0, 1, 2)]), symmetrize=True)
    assert g.out_weight(0).tolist() == [9]
    assert g.out_weight(1).tolist() == [9]


def test_explicit_num_nodes_keeps_isolated_vertices():
    g = undirected([(0, 1)], n=5)
    assert g.num_nodes == 5
    assert g.out_degrees().tolist() == [1, 1, 0, 0, 0]


def test_num_nodes_smaller_than_ids_rejected():
    with pytest.raises(GraphBuildError):
        undirected([(0, 9)], n=3)


def test_id_too_large_rejected():
    with pytest.raises(GraphBuildError, match="32 bits"):
        build_csr(EdgeList([0], [1 << 32]))


def test_negative_id_rejected():
    with pytest.raises(GraphBuildError):
        build_csr(EdgeList([-1], [0]))


def test_mixed_weighting_rejected():
    with pytest.raises(GraphBuildError):
        EdgeList.from_tuples([(0, 1), (1, 2, 3)])
    el = EdgeList.from_tuples([(0, 1)])
    with pytest.raises(GraphBuildError):
        el.append(1, 2, 5)


def test_mismatched_weight_column_rejected():
    with pytest.raises(GraphBuildError):
        EdgeList([0, 1], [1, 2], weights=[4])


def test_empty_edge_list():
    g = build_csr(EdgeList.from_tuples([]))
    assert g.num_nodes == 0
    assert g.num_edges == 0
    assert g.out_offsets.tolist() == [0]


def test_graph_is_read_only():
    g = undirected([(0, 1)])
    with pytest.raises(ValueError):
        g.out_neighbors[0] = 1


def test_symmetric_hint_forces_undirected():
    el = EdgeList.from_tuples([(0, 1)], symmetric=True)
    g = build_csr(el, directed=True)
    assert not g.directed
    assert g.out_neigh(1).tolist() == [0]


def test_to_edge_list_round_trip(kron10_directed):
    g = kron10_directed
    again = build_csr(g.to_edge_list(), directed=True, num_nodes=g.num_nodes)
    for name in ("out_offsets", "out_neighbors", "in_offsets", "in_neighbors"):
        assert np.array_equal(getattr(g, name), getattr(again, name))


def test_directed_in_out_agree(kron10_directed):
    g = kron10_directed
    out_pairs = {(u, int(v)) for u in range(g.num_nodes) for v in g.out_neigh(u)}
    in_pairs = {(int(u), v) for v in range(g.num_nodes) for u in g.in_neigh(v)}
    assert out_pairs == in_pairs
    assert g.in_degrees().sum() == g.num_edges


def test_permutation_must_be_bijection():
    with pytest.raises(ValueError):
        Permutation(np.array([0, 0, 1]))
    p = Permutation(np.array([2, 0, 1]))
    assert p.old_id_of().tolist() == [1, 2, 0]


def test_relabel_star_center_first():
    g, perm = relabel_by_degree(star_graph(4))
    assert perm.new_id_of[4] == 0
    assert g.out_degree(0) == 4
    # ties keep ascending original id
    assert perm.new_id_of[:4].tolist() == [1, 2, 3, 4]


def test_relabel_ring_keeps_degree_sequence():
    ring = ring_graph(10)
    g, perm = relabel_by_degree(ring)
    assert g.out_degrees().tolist() == ring.out_degrees().tolist()
    assert perm.new_id_of.tolist() == list(range(10))


def test_relabel_rejects_directed():
    with pytest.raises(ValueError):
        relabel_by_degree(directed([(0, 1)]))


def test_relabel_is_isomorphism(kron10):
    g, perm = relabel_by_degree(kron10)
    new = perm.new_id_of
    assert g.num_edges == kron10.num_edges
    degs = g.out_degrees()
    assert np.all(degs[:-1] >= degs[1:])
    for u in range(0, kron10.num_nodes, 37):
        mapped = sorted(new[kron10.out_neigh(u)].tolist())
        assert g.out_neigh(new[u]).tolist() == mapped


def test_relabel_preserves_triangles_and_components(kron10):
    g, _ = relabel_by_degree(kron10)
    expected = triangles_by_set_intersection(kron10)
    assert triangle_count(g, relabel=False) == expected
    assert triangle_count(kron10, relabel=False) == expected

    def size_multiset(labels):
        return sorted(np.unique(labels, return_counts=True)[1].tolist())

    assert size_multiset(connected_components(g)) == size_multiset(union_find_labels(kron10))


def test_complete_graph_shape():
    g = complete_graph(5)
    assert isinstance(g, CsrGraph)
    assert g.num_edges == 20
    assert "n=5" in repr(g)
