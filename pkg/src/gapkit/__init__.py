"""Shared-memory graph benchmark kernels, generators, verifiers and harness."""

import numba

# probe OpenMP before TBB; avoids a noisy warning on hosts with an old TBB
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

from .graph import CsrGraph, EdgeList, GraphBuildError, Permutation, build_csr, relabel_by_degree  # noqa: E402

__version__ = "0.1.0"

__all__ = [
    "CsrGraph",
    "EdgeList",
    "GraphBuildError",
    "Permutation",
    "build_csr",
    "relabel_by_degree",
]
