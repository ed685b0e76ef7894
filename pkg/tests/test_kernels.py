import os
import subprocess
import sys

import numpy as np
import pytest

from hyperavg import kernels
from hyperavg.rng import trial_seeds
from hyperavg.process import deviation_norms, edge_sequence, mean_of, trajectory_states

from conftest import BACKENDS, random_hypergraph

needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")


def _batch(backend, h, x, seed, trials, steps):
    verts, offsets = h.csr()
    xbar = mean_of(x)
    sq0, d10 = deviation_norms(x, xbar)
    return backend.run_batch(verts, offsets, x, xbar, sq0, d10, trial_seeds(seed, 0, trials), steps)


def test_run_batch_matches_direct_states(backend, rng):
    for seed in range(20):
        h = random_hypergraph(rng, n_max=7, m_max=6)
        x = rng.normal(size=h.n)
        steps = 15
        sq, d1 = _batch(backend, h, x, seed, 3, steps)
        assert sq.shape == d1.shape == (3, steps + 1)
        xbar = mean_of(x)
        for k in range(3):
            states = trajectory_states(h, x, edge_sequence(h.num_edges, seed, steps, trial=k))
            for t, y in enumerate(states):
                assert sq[k, t] == pytest.approx(np.sum((y - xbar) ** 2), abs=1e-12)
                assert d1[k, t] == pytest.approx(np.sum(np.abs(y - xbar)), abs=1e-12)


def test_run_batch_zero_steps_and_clamping(backend):
    from hyperavg.hypergraph import new_hypergraph

    h = new_hypergraph(3, [[0, 1, 2]])
    x = np.array([0.1, 0.2, 0.7])
    sq, d1 = _batch(backend, h, x, 1, 2, 0)
    assert sq.shape == (2, 1)
    sq, d1 = _batch(backend, h, x, 1, 2, 4)
    assert (sq[:, 1:] >= 0).all() and (d1[:, 1:] >= 0).all()
    assert sq[:, 1:].max() < 1e-15


@needs_compiled
def test_backends_bitwise_identical_trajectories(rng):
    for seed in range(30):
        h = random_hypergraph(rng, n_max=9, m_max=8)
        x = rng.normal(size=h.n)
        a = _batch(kernels.fallback, h, x, seed, 17, 40)
        b = _batch(kernels.compiled, h, x, seed, 17, 40)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@needs_compiled
def test_backends_bitwise_identical_enumeration(rng):
    for _ in range(30):
        h = random_hypergraph(rng, n_max=6, m_max=4)
        x = rng.normal(size=h.n)
        verts, offsets = h.csr()
        a = kernels.fallback.enumerate_sq_norms(verts, offsets, x, mean_of(x), 5)
        b = kernels.compiled.enumerate_sq_norms(verts, offsets, x, mean_of(x), 5)
        assert np.array_equal(np.asarray(a), np.asarray(b))


def test_enumeration_depth_zero(backend):
    x = np.array([1.0, 2.0, 6.0])
    s = backend.enumerate_sq_norms([0, 1], [0, 2], x, 3.0, 0)
    assert list(s) == [14.0]


def test_jacobi_backends_agree(backend, rng):
    for n in (1, 2, 5, 11, 30):
        A = rng.normal(size=(n, n))
        M = A + A.T
        diag, residual, sweeps = backend.jacobi_eigenvalues(M.copy(), 1e-12, 100)
        assert sweeps >= 0 and residual < 1e-12
        assert np.sort(diag) == pytest.approx(np.linalg.eigvalsh(M), abs=1e-10)


def test_jacobi_does_not_mutate_input(backend):
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    backend.jacobi_eigenvalues(M, 1e-12, 100)
    assert M.tolist() == [[2.0, 1.0], [1.0, 2.0]]


def test_backend_list_nonempty():
    assert BACKENDS[0].BACKEND == "python"
    assert kernels.BACKEND == kernels.active.BACKEND


def test_pure_env_selects_fallback():
    env = dict(os.environ, HYPERAVG_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from hyperavg import kernels; print(kernels.BACKEND, kernels.compiled)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["python", "None"]
