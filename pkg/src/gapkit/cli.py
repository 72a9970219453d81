"""Command-line entry point: ``gapkit <subcommand> [flags]``.

Kernel subcommands (``bfs sssp pr cc bc tc``) run one kernel under its
default trial schedule, ``suite`` runs all six on the same graph and
``convert`` writes a graph as ``.sg``/``.wsg``.  Every run prints a summary
table; the per-trial CSV report goes to ``-o`` (or standard output).

Exit status is 0 when the run succeeded and every requested verification
passed, 1 when a verification failed and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numba

from . import bench
from .bench import BenchPlan, ConfigurationError, Kernel, VerificationError
from .generate import DEFAULT_SEED, GenKind, GenSpec, generate
from .graph import CsrGraph, GraphBuildError, build_csr
from .graphio import (GraphFileFormat, GraphFormatError, GraphParseError, SerializationError,
                      format_from_path, load_graph, write_serialized)

THREADS_ENV = "GAPKIT_THREADS"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

KERNEL_HELP = {
    "bfs": "breadth-first search parent tree",
    "sssp": "delta-stepping shortest paths (unweighted inputs get seeded weights)",
    "pr": "PageRank; -i sets the maximum number of iterations",
    "cc": "connected components (weak on directed inputs)",
    "bc": "betweenness centrality; -i sets the sources per trial",
    "tc": "triangle count",
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-f", dest="file", metavar="PATH",
                     help="load a graph file (.el .wel .graph .mtx .sg .wsg)")
    src.add_argument("-g", dest="kron_scale", type=int, metavar="SCALE",
                     help="generate an undirected Kronecker graph with 2^SCALE vertices")
    src.add_argument("-u", dest="urand_scale", type=int, metavar="SCALE",
                     help="generate an undirected uniform random graph with 2^SCALE vertices")
    p.add_argument("-k", dest="avg_degree", type=_positive_int, default=16, metavar="DEG",
                   help="average degree for generated graphs (default 16)")
    p.add_argument("-s", dest="symmetrize", action="store_true",
                   help="symmetrize a loaded graph (make it undirected)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"seed for generation, weights and sources (default {DEFAULT_SEED})")
    p.add_argument("--threads", type=_positive_int, default=None,
                   help=f"kernel worker threads (default: ${THREADS_ENV} or all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapkit", description="Run and verify the six graph benchmark kernels.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for name, help_text in KERNEL_HELP.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _graph_args(p)
        p.add_argument("-n", dest="trials", type=_positive_int, help="number of trials")
        p.add_argument("-v", dest="verify", action="store_true", help="verify every trial")
        p.add_argument("-o", dest="output", metavar="PATH", help="write the CSV report here")
        if name in ("bfs", "sssp", "bc"):
            p.add_argument("-r", dest="source", type=int, metavar="V",
                           help="use vertex V as the source of every trial")
        if name == "sssp":
            p.add_argument("-d", dest="delta", type=_positive_int, help="bucket width (default 1)")
        if name == "pr":
            p.add_argument("-i", dest="max_iters", type=_positive_int,
                           help="maximum iterations (default 20)")
            p.add_argument("-t", dest="tolerance", type=float,
                           help="L1 convergence tolerance (default 1e-4)")
        if name == "bc":
            p.add_argument("-i", dest="bc_sources", type=_positive_int,
                           help="sources per trial (default 4)")

    p = sub.add_parser("suite", help="run every kernel on one graph",
                       description="Run all six kernels with their default trial counts.")
    _graph_args(p)
    p.add_argument("-n", dest="trials", type=_positive_int,
                   help="override the trial count of every kernel")
    p.add_argument("-d", dest="delta", type=_positive_int, help="SSSP bucket width")
    p.add_argument("-t", dest="tolerance", type=float, help="PR tolerance")
    p.add_argument("-v", dest="verify", action="store_true", help="verify every trial")
    p.add_argument("-o", dest="output", metavar="PATH", help="write the CSV report here")

    p = sub.add_parser("convert", help="write a graph in the binary format",
                       description="Read any supported graph and write it as .sg or .wsg. "
                                   "Writing .wsg from an unweighted graph adds seeded weights.")
    _graph_args(p)
    p.add_argument("-o", dest="output", metavar="PATH", required=True,
                   help="output path ending in .sg or .wsg")
    return parser


def _set_threads(requested: Optional[int]) -> None:
    if requested is None:
        env = os.environ.get(THREADS_ENV)
        if not env:
            return
        try:
            requested = int(env)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV}={env!r} is not an integer") from None
        if requested < 1:
            raise ConfigurationError(f"{THREADS_ENV} must be positive, got {requested}")
    numba.set_num_threads(min(requested, numba.config.NUMBA_NUM_THREADS))


def load_configured_graph(args) -> tuple[CsrGraph, str]:
    """Build or load the graph selected by ``-f``/``-g``/``-u`` (untimed)."""
    if args.file is not None:
        g = load_graph(args.file, symmetrize=args.symmetrize)
        return g, Path(args.file).stem
    kind = GenKind.Kronecker if args.kron_scale is not None else GenKind.UniformRandom
    scale = args.kron_scale if args.kron_scale is not None else args.urand_scale
    spec = GenSpec(kind, scale, args.avg_degree, args.seed)
    g = build_csr(generate(spec, workers=numba.get_num_threads()), symmetrize=True,
                  num_nodes=spec.num_nodes)
    return g, f"{kind.value}{scale}"


def _convert(args, g: CsrGraph) -> int:
    fmt = format_from_path(args.output)
    if not fmt.serialized:
        raise ConfigurationError(f"convert writes .sg or .wsg, not {fmt.value}")
    if fmt is GraphFileFormat.SerializedWeightedBinary:
        g = bench.weighted_variant(g, args.seed)
    elif g.weighted:
        g = CsrGraph(g.directed, g.out_offsets, g.out_neighbors, None,
                     g.in_offsets if g.directed else None,
                     g.in_neighbors if g.directed else None, None)
    write_serialized(g, args.output)
    print(f"wrote {args.output}: {g!r}")
    return EXIT_OK


def _report(summaries, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            bench.write_csv(summaries, fh)
    else:
        bench.write_csv(summaries, sys.stdout)
        print()
    print(bench.format_table(summaries))


def _overrides(args) -> dict:
    keys = {"trials": "trials", "delta": "delta", "max_iters": "max_iters",
            "tolerance": "tolerance", "bc_sources": "sources_per_trial", "source": "fixed_source"}
    out = {}
    for attr, field in keys.items():
        value = getattr(args, attr, None)
        if value is not None:
            out[field] = value
    out["source_seed"] = args.seed
    return out


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        _set_threads(args.threads)
        g, name = load_configured_graph(args)
        if args.command == "convert":
            return _convert(args, g)
        if args.command == "suite":
            summaries = bench.run_suite(g, args.verify, name, weight_seed=args.seed,
                                        **_overrides(args))
        else:
            kernel = Kernel(args.command)
            if kernel is Kernel.SSSP:
                g = bench.weighted_variant(g, args.seed)
            plan = BenchPlan.default(kernel, **_overrides(args))
            summaries = [bench.run_benchmark(g, plan, args.verify, name)]
    except VerificationError as exc:
        _report(exc.completed + [exc.summary], args.output)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (ConfigurationError, GraphFormatError, GraphParseError, SerializationError,
            GraphBuildError, ValueError, OSError) as exc:
        print(f"gapkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _report(summaries, args.output)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_cli(argv))
