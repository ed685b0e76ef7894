import numpy as np
import pytest

from hyperavg import kernels
from hyperavg.hypergraph import Hypergraph, new_hypergraph

BACKENDS = [kernels.fallback] + ([kernels.compiled] if kernels.compiled is not None else [])


@pytest.fixture
def h_prime() -> Hypergraph:
    # the 4-vertex example with edges {1,2},{1,2},{2,3,4}, shifted to 0-based
    return new_hypergraph(4, [[0, 1], [0, 1], [1, 2, 3]])


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_hypergraph(rng, n_max=6, m_max=5, connected=None, min_size=1, n_min=2):
    """Random hypergraph; ``connected`` forces (True) or forbids (False) connectivity."""
    from hyperavg.hypergraph import is_connected

    while True:
        n = int(rng.integers(n_min, n_max + 1))
        m = int(rng.integers(1, m_max + 1))
        edges = []
        for _ in range(m):
            k = int(rng.integers(min(min_size, n), n + 1))
            edges.append(sorted(rng.choice(n, size=k, replace=False).tolist()))
        h = new_hypergraph(n, edges)
        if connected is None or is_connected(h) == connected:
            return h


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
