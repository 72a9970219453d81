"""Running the timed benchmark schedule, from Python and from the command line.

Run with ``python demos/04_benchmark_suite.py``.
"""

# %%
import io
import subprocess
import sys

from gapkit import build_csr
from gapkit.bench import BenchPlan, Kernel, format_table, run_benchmark, run_suite, write_csv
from gapkit.generate import GenKind, GenSpec, generate

spec = GenSpec(GenKind.Kronecker, 11)
g = build_csr(generate(spec), symmetrize=True, num_nodes=spec.num_nodes)

# One kernel, a custom plan: eight verified BFS trials from reproducible sources.
bfs_runs = run_benchmark(g, BenchPlan.default(Kernel.BFS, trials=8), verify=True,
                         graph_name="kron11")
print([t.sources[0] for t in bfs_runs.trials])
print(f"mean {bfs_runs.mean * 1e3:.2f} ms, verified={bfs_runs.all_verified}")

# %%
# The full schedule; SSSP gets a weighted copy automatically.
summaries = run_suite(g, verify=True, graph_name="kron11")
print(format_table(summaries))

buf = io.StringIO()
write_csv(summaries, buf)
print(buf.getvalue().splitlines()[0])
print(buf.getvalue().splitlines()[-1])

# %%
# The same thing through the command-line front end.
proc = subprocess.run([sys.executable, "-m", "gapkit", "bc", "-u", "10", "-n", "2", "-v"],
                      capture_output=True, text=True)
print(proc.stdout)
print("exit status", proc.returncode)
