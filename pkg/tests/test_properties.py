"""Property-based checks of the graph and kernel invariants on small random graphs."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gapkit import EdgeList, build_csr, relabel_by_degree
from gapkit.generate import GenKind, GenSpec, generate
from gapkit.kernels import (betweenness, bfs, connected_components, pagerank, sssp,
                            triangle_count)
from gapkit.verify import (dijkstra, same_partition, serial_brandes,
                           triangles_by_set_intersection, union_find_labels, verify_bfs,
                           verify_cc)

settings.register_profile("gapkit", max_examples=60, deadline=None)
settings.load_profile("gapkit")


@st.composite
def edge_lists(draw, max_nodes=24, max_edges=80, weighted=False):
    n = draw(st.integers(1, max_nodes))
    k = draw(st.integers(0, max_edges))
    ids = st.integers(0, n - 1)
    src = draw(st.lists(ids, min_size=k, max_size=k))
    dst = draw(st.lists(ids, min_size=k, max_size=k))
    weights = None
    if weighted:
        weights = draw(st.lists(st.integers(1, 255), min_size=k, max_size=k))
    return EdgeList(src, dst, weights, num_nodes=n)


@st.composite
def graphs(draw, weighted=False, allow_directed=True):
    el = draw(edge_lists(weighted=weighted))
    is_directed = allow_directed and draw(st.booleans())
    return build_csr(el, directed=is_directed, symmetrize=not is_directed)


def check_csr_invariants(g):
    n, m = g.num_nodes, g.num_edges
    off = g.out_offsets
    assert off[0] == 0 and off[-1] == m
    assert np.all(np.diff(off) >= 0)
    assert int(g.out_degrees().sum()) == m
    pairs = set()
    for u in range(n):
        nbrs = g.out_neigh(u)
        assert np.all(nbrs < n)
        assert u not in nbrs
        assert np.all(np.diff(nbrs.astype(np.int64)) > 0)
        pairs.update((u, int(v)) for v in nbrs)
    if g.directed:
        in_pairs = {(int(u), v) for v in range(n) for u in g.in_neigh(v)}
        assert in_pairs == pairs
    else:
        assert all((v, u) in pairs for u, v in pairs)


@given(edge_lists(weighted=True), st.booleans())
def test_built_graph_satisfies_invariants(el, symmetrize):
    check_csr_invariants(build_csr(el, symmetrize=symmetrize))


@given(edge_lists(weighted=True), st.booleans())
def test_build_is_idempotent(el, symmetrize):
    g = build_csr(el, symmetrize=symmetrize)
    again = build_csr(g.to_edge_list(), directed=g.directed, num_nodes=g.num_nodes)
    for name in ("out_offsets", "out_neighbors", "out_weights",
                 "in_offsets", "in_neighbors", "in_weights"):
        a, b = getattr(g, name), getattr(again, name)
        assert (a is None and b is None) or np.array_equal(a, b)


@given(edge_lists())
def test_relabel_invariants(el):
    g = build_csr(el, symmetrize=True)
    r, perm = relabel_by_degree(g)
    check_csr_invariants(r)
    assert r.num_edges == g.num_edges
    assert sorted(r.out_degrees().tolist()) == sorted(g.out_degrees().tolist())
    assert np.all(np.diff(r.out_degrees()) <= 0)
    assert sorted(perm.new_id_of.tolist()) == list(range(g.num_nodes))
    assert triangles_by_set_intersection(r) == triangles_by_set_intersection(g)

    def sizes(labels):
        return sorted(np.unique(labels, return_counts=True)[1].tolist())

    assert sizes(union_find_labels(r)) == sizes(union_find_labels(g))


@given(graphs(), st.data())
def test_bfs_always_verifies(g, data):
    s = data.draw(st.integers(0, g.num_nodes - 1))
    mode = data.draw(st.fixed_dictionaries({
        "direction_optimizing": st.booleans(), "encode_degree": st.booleans(),
        "alpha": st.sampled_from([0.5, 15, 1e6]), "beta": st.sampled_from([0.5, 18, 1e6])}))
    report = verify_bfs(g, s, bfs(g, s, **mode))
    assert report, report.failure_detail


@given(graphs(weighted=True), st.data())
def test_sssp_independent_of_delta(g, data):
    s = data.draw(st.integers(0, g.num_nodes - 1))
    delta = data.draw(st.integers(1, 300))
    assert np.array_equal(sssp(g, s, delta), dijkstra(g, s))


@given(graphs())
def test_cc_partition(g):
    labels = connected_components(g)
    assert same_partition(labels, union_find_labels(g))
    assert verify_cc(g, labels)


@given(graphs(allow_directed=False))
def test_tc_exact_with_and_without_relabel(g):
    expected = triangles_by_set_intersection(g)
    assert triangle_count(g, relabel=False) == expected
    assert triangle_count(g, relabel=True) == expected


@given(graphs(), st.data())
def test_bc_matches_serial(g, data):
    candidates = np.flatnonzero(g.out_degrees())
    if len(candidates) == 0:
        return
    sources = data.draw(st.lists(st.sampled_from(candidates.tolist()), min_size=1, max_size=4))
    got = betweenness(g, sources)
    assert np.max(np.abs(got - serial_brandes(g, sources))) < 1e-4


@given(graphs())
def test_pagerank_positive(g):
    scores = pagerank(g, max_iters=200)
    assert np.all(scores > 0)
    if g.out_degrees().min() > 0:
        assert abs(float(scores.sum()) - 1.0) < 1e-3


@given(graphs(weighted=True), st.data())
def test_kernels_do_not_modify_graph(g, data):
    before = [None if a is None else a.copy()
              for a in (g.out_offsets, g.out_neighbors, g.out_weights,
                        g.in_offsets, g.in_neighbors, g.in_weights)]
    s = data.draw(st.integers(0, g.num_nodes - 1))
    bfs(g, s)
    sssp(g, s)
    pagerank(g, max_iters=200)
    connected_components(g)
    if g.out_degree(s):
        betweenness(g, [s])
    if not g.directed:
        triangle_count(g, relabel=True)
    after = (g.out_offsets, g.out_neighbors, g.out_weights,
             g.in_offsets, g.in_neighbors, g.in_weights)
    for a, b in zip(before, after):
        assert (a is None and b is None) or np.array_equal(a, b)


@given(st.sampled_from(list(GenKind)), st.integers(0, 8), st.integers(1, 8),
       st.integers(0, 2 ** 64 - 1), st.integers(2, 6))
def test_generation_independent_of_workers(kind, scale, degree, seed, workers):
    spec = GenSpec(kind, scale, degree, seed)
    a = generate(spec, workers=1)
    b = generate(spec, workers=workers)
    assert len(a) == degree << scale
    assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)
    assert a.src.max(initial=0) < (1 << scale)
