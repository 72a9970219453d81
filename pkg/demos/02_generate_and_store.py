"""Deterministic synthetic graphs and the on-disk formats.

Run with ``python demos/02_generate_and_store.py``.
"""

# %%
import tempfile
from pathlib import Path

import numpy as np

from gapkit import build_csr
from gapkit.generate import GenKind, GenSpec, assign_weights, generate
from gapkit.graphio import load_graph, read_serialized, write_serialized

spec = GenSpec(GenKind.Kronecker, scale=12, avg_degree=16, seed=42)
edges = generate(spec)
print(f"{len(edges)} generated edges over {spec.num_nodes} vertices")

# The stream is cut into fixed blocks keyed by (seed, block), so worker count is irrelevant.
again = generate(spec, workers=4)
print("identical with 4 workers:", np.array_equal(edges.src, again.src)
      and np.array_equal(edges.dst, again.dst))

# %%
g = build_csr(edges, symmetrize=True, num_nodes=spec.num_nodes)
deg = g.out_degrees()
print(f"kron12: max degree {deg.max()}, median {np.median(deg):.0f}, isolated {np.sum(deg == 0)}")

u = build_csr(generate(GenSpec(GenKind.UniformRandom, 12)), symmetrize=True)
print(f"urand12: max degree {u.out_degrees().max()}, median {np.median(u.out_degrees()):.0f}")

# %%
weighted = assign_weights(edges)
print("weights span", weighted.weights.min(), "to", weighted.weights.max())

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    text = tmp / "kron12.wel"
    text.write_text("".join(f"{s} {d} {w}\n" for s, d, w in weighted))
    from_text = load_graph(text, symmetrize=True)

    binary = tmp / "kron12.wsg"
    write_serialized(from_text, binary)
    from_binary = read_serialized(binary)
    print(f"text {text.stat().st_size} bytes, binary {binary.stat().st_size} bytes")
    print("round trip exact:",
          np.array_equal(from_text.out_neighbors, from_binary.out_neighbors)
          and np.array_equal(from_text.out_weights, from_binary.out_weights))
