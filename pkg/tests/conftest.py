import networkx as nx
import numpy as np
import pytest

from lattice_lel.graph_core import Graph
from lattice_lel.jacobi import COMPILED_AVAILABLE

BACKENDS = ["python"] + (["compiled"] if COMPILED_AVAILABLE else [])


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n_vertices))
    out.add_edges_from(g.sorted_edges)
    return out


def numpy_laplacian_eigs(g: Graph) -> np.ndarray:
    """Independent oracle: LAPACK via numpy on the networkx Laplacian."""
    lap = nx.laplacian_matrix(to_nx(g), nodelist=range(g.n_vertices)).toarray().astype(float)
    return np.sort(np.linalg.eigvalsh(lap))[::-1]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
