import numpy as np
import pytest

from gapkit import EdgeList, build_csr
from gapkit.bench import weighted_variant
from gapkit.generate import GenKind, GenSpec, generate


def undirected(pairs, n=None):
    return build_csr(EdgeList.from_tuples(pairs), symmetrize=True, num_nodes=n)


def directed(tuples, n=None):
    return build_csr(EdgeList.from_tuples(tuples), directed=True, num_nodes=n)


def path_graph(n=3):
    return undirected([(i, i + 1) for i in range(n - 1)])


def star_graph(leaves=4):
    # center gets the highest id so relabelling has something to do
    return undirected([(i, leaves) for i in range(leaves)])


def ring_graph(n=8):
    return undirected([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n=5):
    return undirected([(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(rows, cols):
    ids = np.arange(rows * cols).reshape(rows, cols)
    src = np.concatenate([ids[:, :-1].ravel(), ids[:-1, :].ravel()])
    dst = np.concatenate([ids[:, 1:].ravel(), ids[1:, :].ravel()])
    return build_csr(EdgeList(src, dst), symmetrize=True)


def synthetic(kind, scale, directed_graph=False, degree=16):
    spec = GenSpec(kind, scale, degree)
    return build_csr(generate(spec), directed=directed_graph,
                     symmetrize=not directed_graph, num_nodes=spec.num_nodes)


@pytest.fixture(scope="session")
def toys():
    return {
        "path": path_graph(),
        "star": star_graph(),
        "ring": ring_graph(),
        "k5": complete_graph(),
    }


@pytest.fixture(scope="session")
def kron10():
    return synthetic(GenKind.Kronecker, 10)


@pytest.fixture(scope="session")
def urand10():
    return synthetic(GenKind.UniformRandom, 10)


@pytest.fixture(scope="session")
def kron10_directed():
    return synthetic(GenKind.Kronecker, 10, directed_graph=True)


@pytest.fixture(scope="session")
def kron10_weighted(kron10):
    return weighted_variant(kron10)


@pytest.fixture(scope="session")
def urand10_weighted(urand10):
    return weighted_variant(urand10)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
