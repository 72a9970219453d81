"""How the two BFS directions trade off on a scale-free graph and on a long grid.

Run with ``python demos/05_traversal_direction.py``.  Timings depend on the host.
"""

# %%
import time

import numpy as np

from gapkit import EdgeList, build_csr
from gapkit.bench import pick_sources
from gapkit.generate import GenKind, GenSpec, generate
from gapkit.kernels import bfs, warmup

warmup()


def mean_time(g, sources, **mode):
    bfs(g, sources[0], **mode)
    times = []
    for s in sources:
        t = time.perf_counter()
        bfs(g, s, **mode)
        times.append(time.perf_counter() - t)
    return np.mean(times)


# %%
# Scale-free graphs reach most vertices in a few steps, where bottom-up sweeps shine.
spec = GenSpec(GenKind.Kronecker, 17)
kron = build_csr(generate(spec), symmetrize=True, num_nodes=spec.num_nodes)
sources = pick_sources(kron, 8)
hybrid = mean_time(kron, sources)
top_down = mean_time(kron, sources, direction_optimizing=False)
print(f"kron17: hybrid {hybrid * 1e3:.1f} ms, top-down only {top_down * 1e3:.1f} ms "
      f"({top_down / hybrid:.1f}x)")

# %%
# A grid has a tiny frontier for thousands of steps, so the traversal never leaves top-down.
# There the cost that matters is summing frontier degrees for the switch heuristic.
side = 600
ids = np.arange(side * side).reshape(side, side)
grid = build_csr(EdgeList(np.concatenate([ids[:, :-1].ravel(), ids[:-1, :].ravel()]),
                          np.concatenate([ids[:, 1:].ravel(), ids[1:, :].ravel()])),
                 symmetrize=True)
corners = [0, side - 1, side * (side - 1), side * side - 1]
encoded = mean_time(grid, corners)
recomputed = mean_time(grid, corners, encode_degree=False)
print(f"grid{side}: degree carried in parent slot {encoded * 1e3:.1f} ms, "
      f"recomputed {recomputed * 1e3:.1f} ms")
