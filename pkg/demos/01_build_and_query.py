"""Building a CSR graph from an edge list and running each kernel on it.

Run with ``python demos/01_build_and_query.py``.
"""

# %%
import numpy as np

from gapkit import EdgeList, build_csr, relabel_by_degree
from gapkit.kernels import betweenness, bfs, connected_components, pagerank, sssp, triangle_count

# A small road map: two triangles joined by a bridge, plus one isolated town (7).
roads = [(0, 1, 4), (1, 2, 3), (0, 2, 9), (2, 3, 1), (3, 4, 2), (4, 5, 7), (3, 5, 5), (5, 6, 1)]
g = build_csr(EdgeList.from_tuples(roads), symmetrize=True, num_nodes=8)
print(g)
print("degrees:", g.out_degrees())
print("neighbors of 3:", g.out_neigh(3), "with weights", g.out_weight(3))

# %%
# BFS returns a parent array; unreached vertices keep -1 and the source is its own parent.
parent = bfs(g, 0)
print("bfs parents from 0:", parent)

# Delta-stepping distances; unreachable vertices report the int32 maximum.
dist = sssp(g, 0, delta=2)
print("distances from 0:", np.where(dist == np.iinfo(np.int32).max, -1, dist))

# %%
labels = connected_components(g)
print("component labels:", labels)
print("triangles:", triangle_count(g))

scores = pagerank(g, max_iters=100)
print("pagerank:", np.round(scores, 4))

# Betweenness from a handful of sources, scaled so the top vertex scores 1.
print("betweenness from {0, 6}:", np.round(betweenness(g, [0, 6]), 3))

# %%
# Relabelling by degree puts hubs first; the permutation maps between id spaces.
r, perm = relabel_by_degree(g)
print("relabelled degrees:", r.out_degrees())
print("new id of old vertex 3:", perm.new_id_of[3])
