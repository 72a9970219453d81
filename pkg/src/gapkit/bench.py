"""Benchmark harness: trial schedules, timing and reports.

A trial times one kernel call, from allocating its solution array to the
kernel returning (graph relabeling for TC included).  Graph loading,
building, weight assignment and preparing the undirected variant that TC
and CC use on directed inputs all happen before timing starts.  Only the graph is shared between trials.
"""

from __future__ import annotations

import enum
import hashlib
import statistics
import sys
import time
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from . import kernels
from . import verify as V
from .generate import DEFAULT_SEED, assign_weights
from .graph import CsrGraph, EdgeList, build_csr
from .sources import SourcePicker

__all__ = [
    "Kernel",
    "BenchPlan",
    "TrialResult",
    "BenchSummary",
    "ConfigurationError",
    "VerificationError",
    "pick_sources",
    "run_benchmark",
    "run_suite",
    "weighted_variant",
    "undirected_variant",
    "write_csv",
    "format_table",
    "CSV_HEADER",
]

CSV_HEADER = "kernel,graph,trial,source,elapsed_seconds,verified"


class Kernel(enum.Enum):
    BFS = "bfs"
    SSSP = "sssp"
    PR = "pr"
    CC = "cc"
    BC = "bc"
    TC = "tc"


# trials, sources consumed per trial
TRIAL_SCHEDULE = {
    Kernel.BFS: (64, 1),
    Kernel.SSSP: (64, 1),
    Kernel.PR: (16, 0),
    Kernel.CC: (16, 0),
    Kernel.BC: (16, 4),
    Kernel.TC: (3, 0),
}


class ConfigurationError(ValueError):
    """The plan cannot run on the given graph."""


class VerificationError(RuntimeError):
    """A trial's output failed verification; carries the partial summary."""

    def __init__(self, summary: "BenchSummary", trial: "TrialResult"):
        self.summary = summary
        self.trial = trial
        # kernels that finished before this one (set by run_suite)
        self.completed: List[BenchSummary] = []
        super().__init__(f"{summary.kernel.value} trial {trial.trial_index} failed "
                         f"verification: {trial.detail}")


@dataclass(frozen=True)
class BenchPlan:
    kernel: Kernel
    trials: int
    sources_per_trial: int
    delta: int = kernels.DEFAULT_DELTA
    tolerance: float = kernels.DEFAULT_TOLERANCE
    max_iters: int = kernels.DEFAULT_MAX_ITERS
    alpha: float = kernels.DEFAULT_ALPHA
    beta: float = kernels.DEFAULT_BETA
    source_seed: int = DEFAULT_SEED
    fixed_source: Optional[int] = None

    @classmethod
    def default(cls, kernel: Kernel, **overrides) -> "BenchPlan":
        kernel = Kernel(kernel)
        trials, per_trial = TRIAL_SCHEDULE[kernel]
        plan = cls(kernel, trials, per_trial)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(plan, **overrides)

    @property
    def bc_sources(self) -> int:
        return self.sources_per_trial if self.kernel is Kernel.BC else 0


@dataclass
class TrialResult:
    trial_index: int
    sources: Tuple[int, ...]
    elapsed_seconds: float
    verified: Optional[bool]
    digest: str
    detail: str = ""


@dataclass
class BenchSummary:
    kernel: Kernel
    graph_name: str
    trials: List[TrialResult] = field(default_factory=list)

    @property
    def times(self) -> List[float]:
        return [t.elapsed_seconds for t in self.trials]

    @property
    def mean(self) -> float:
        return statistics.fmean(self.times) if self.trials else float("nan")

    @property
    def min(self) -> float:
        return min(self.times) if self.trials else float("nan")

    @property
    def max(self) -> float:
        return max(self.times) if self.trials else float("nan")

    @property
    def all_verified(self) -> Optional[bool]:
        flags = [t.verified for t in self.trials]
        if not flags or any(f is None for f in flags):
            return None
        return all(flags)


def pick_sources(g: CsrGraph, count: int, seed: int = DEFAULT_SEED) -> List[int]:
    return SourcePicker(g, seed).pick(count)


def weighted_variant(g: CsrGraph, seed: int = DEFAULT_SEED) -> CsrGraph:
    """Copy of ``g`` with deterministic weights in [1, 255].

    For undirected graphs weights are drawn once per ``u < v`` edge so both
    stored directions agree.
    """
    if g.weighted:
        return g
    edges = g.to_edge_list()
    if g.directed:
        return build_csr(assign_weights(edges, seed), directed=True, num_nodes=g.num_nodes)
    keep = edges.src < edges.dst
    half = EdgeList(edges.src[keep], edges.dst[keep])
    return build_csr(assign_weights(half, seed), symmetrize=True, num_nodes=g.num_nodes)


def undirected_variant(g: CsrGraph) -> CsrGraph:
    if not g.directed:
        return g
    return build_csr(g.to_edge_list(), symmetrize=True, num_nodes=g.num_nodes)


def _digest(result) -> str:
    if isinstance(result, np.ndarray):
        data = result.tobytes()
    else:
        data = int(result).to_bytes(8, "little", signed=True)
    return hashlib.sha256(data).hexdigest()[:16]


def _kernel_call(plan: BenchPlan, g: CsrGraph) -> Callable[[Tuple[int, ...]], object]:
    k = plan.kernel
    if k is Kernel.BFS:
        return lambda s: kernels.bfs(g, s[0], plan.alpha, plan.beta)
    if k is Kernel.SSSP:
        return lambda s: kernels.sssp(g, s[0], plan.delta)
    if k is Kernel.PR:
        def run_pr(_):
            with warnings.catch_warnings():
                # non-convergence shows up as a verification failure instead
                warnings.simplefilter("ignore", kernels.PageRankConvergenceWarning)
                return kernels.pagerank(g, tolerance=plan.tolerance, max_iters=plan.max_iters)
        return run_pr
    if k is Kernel.CC:
        return lambda _: kernels.connected_components(g)
    if k is Kernel.BC:
        return lambda s: kernels.betweenness(g, s)
    return lambda _: kernels.triangle_count(g)


def _check(plan: BenchPlan, g: CsrGraph, sources, result) -> V.VerifyReport:
    k = plan.kernel
    if k is Kernel.BFS:
        return V.verify_bfs(g, sources[0], result)
    if k is Kernel.SSSP:
        return V.verify_sssp(g, sources[0], result)
    if k is Kernel.PR:
        return V.verify_pr(g, result, plan.tolerance)
    if k is Kernel.CC:
        return V.verify_cc(g, result)
    if k is Kernel.BC:
        return V.verify_bc(g, sources, result)
    return V.verify_tc(g, result)


def run_benchmark(g: CsrGraph, plan: BenchPlan, verify: bool = False,
                  graph_name: str = "graph",
                  clock: Callable[[], float] = time.perf_counter) -> BenchSummary:
    """Run ``plan.trials`` timed trials of one kernel on ``g``.

    Raises :class:`ConfigurationError` when the plan does not fit the graph
    and :class:`VerificationError` at the first trial that fails
    verification (when ``verify`` is set).
    """
    if plan.trials < 1:
        raise ConfigurationError("a plan needs at least one trial")
    if g.num_nodes == 0:
        raise ConfigurationError("graph has no vertices")
    if plan.kernel is Kernel.SSSP and not g.weighted:
        raise ConfigurationError("SSSP needs a weighted graph")
    if plan.kernel is Kernel.SSSP and plan.delta < 1:
        raise ConfigurationError("delta must be >= 1")
    if plan.kernel in (Kernel.TC, Kernel.CC):
        g = undirected_variant(g)

    picker = None
    if plan.sources_per_trial:
        if plan.fixed_source is not None:
            if not 0 <= plan.fixed_source < g.num_nodes:
                raise ConfigurationError(f"source {plan.fixed_source} is not a vertex")
            if plan.kernel is Kernel.BC and g.out_degree(plan.fixed_source) == 0:
                raise ConfigurationError(f"BC source {plan.fixed_source} has zero out-degree")
        else:
            try:
                picker = SourcePicker(g, plan.source_seed)
            except ValueError as exc:
                raise ConfigurationError(str(exc)) from None

    kernels.warmup()
    call = _kernel_call(plan, g)
    summary = BenchSummary(plan.kernel, graph_name)
    for trial in range(plan.trials):
        if picker is not None:
            sources = tuple(picker.pick(plan.sources_per_trial))
        elif plan.sources_per_trial:
            sources = (plan.fixed_source,) * plan.sources_per_trial
        else:
            sources = ()
        start = clock()
        result = call(sources)
        elapsed = clock() - start
        verified, detail = None, ""
        if verify:
            report = _check(plan, g, sources, result)
            verified, detail = report.ok, report.failure_detail
        tr = TrialResult(trial, sources, elapsed, verified, _digest(result), detail)
        summary.trials.append(tr)
        if verified is False:
            raise VerificationError(summary, tr)
    return summary


def run_suite(g: CsrGraph, verify: bool = False, graph_name: str = "graph",
              weight_seed: int = DEFAULT_SEED,
              clock: Callable[[], float] = time.perf_counter,
              **overrides) -> List[BenchSummary]:
    """All six kernels on one graph with their default trial schedules.

    An unweighted graph gets deterministic weights first so that every
    kernel runs on the same layout.  ``overrides`` go to every plan.
    """
    g = weighted_variant(g, weight_seed)
    done: List[BenchSummary] = []
    for k in Kernel:
        try:
            plan = BenchPlan.default(k, **overrides)
            done.append(run_benchmark(g, plan, verify, graph_name, clock))
        except VerificationError as exc:
            exc.completed = done
            raise
    return done


def _fmt_verified(v: Optional[bool]) -> str:
    return "" if v is None else str(v).lower()


def write_csv(summaries: Sequence[BenchSummary], out: TextIO = sys.stdout) -> None:
    """One line per trial, then one ``# summary`` line per kernel."""
    print(CSV_HEADER, file=out)
    for s in summaries:
        for t in s.trials:
            src = ";".join(str(x) for x in t.sources)
            print(f"{s.kernel.value},{s.graph_name},{t.trial_index},{src},"
                  f"{t.elapsed_seconds:.9f},{_fmt_verified(t.verified)}", file=out)
    for s in summaries:
        print(f"# summary,{s.kernel.value},{s.graph_name},trials={len(s.trials)},"
              f"mean={s.mean:.9f},min={s.min:.9f},max={s.max:.9f},"
              f"verified={_fmt_verified(s.all_verified)}", file=out)


def format_table(summaries: Sequence[BenchSummary]) -> str:
    rows = [("kernel", "graph", "trials", "mean [s]", "min [s]", "max [s]", "verified")]
    for s in summaries:
        rows.append((s.kernel.value, s.graph_name, str(len(s.trials)), f"{s.mean:.6f}",
                     f"{s.min:.6f}", f"{s.max:.6f}", _fmt_verified(s.all_verified) or "-"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
