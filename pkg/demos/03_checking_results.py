"""Verifying kernel output against serial oracles, and catching tampered output.

Run with ``python demos/03_checking_results.py``.
"""

# %%
from gapkit import build_csr
from gapkit.bench import pick_sources, weighted_variant
from gapkit.generate import GenKind, GenSpec, generate
from gapkit.kernels import betweenness, bfs, connected_components, pagerank, sssp, triangle_count
from gapkit.verify import verify_bc, verify_bfs, verify_cc, verify_pr, verify_sssp, verify_tc

spec = GenSpec(GenKind.UniformRandom, 11)
g = build_csr(generate(spec), symmetrize=True, num_nodes=spec.num_nodes)
wg = weighted_variant(g)
source = pick_sources(g, 1)[0]

checks = {
    "bfs": verify_bfs(g, source, bfs(g, source)),
    "sssp": verify_sssp(wg, source, sssp(wg, source, delta=16)),
    "pr": verify_pr(g, pagerank(g)),
    "cc": verify_cc(g, connected_components(g)),
    "bc": verify_bc(g, [source], betweenness(g, [source])),
    "tc": verify_tc(g, triangle_count(g)),
}
for name, report in checks.items():
    print(f"{name:5s} {'ok' if report else report.failure_detail}")

# %%
# Reports are falsy on failure and say what went wrong.
dist = sssp(wg, source)
victim = int(dist.argmax())
dist[victim] += 1
print("tampered sssp:", verify_sssp(wg, source, dist).failure_detail)

labels = connected_components(g)
labels[source] = g.num_nodes + 1
print("split component:", verify_cc(g, labels).failure_detail)

print("triangle count off by one:", verify_tc(g, triangle_count(g) + 1).failure_detail)
