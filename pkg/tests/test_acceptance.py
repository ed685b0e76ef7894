"""Acceptance gate: nine criteria, each reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py``; the lines appear in the
"acceptance criteria" section of the terminal summary.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from hyperavg.experiments import reproduce_figure, verify_prop5, verify_prop6, verify_theorem3, verify_theorem4
from hyperavg.hypergraph import (
    Graph,
    complete_graph,
    complete_r_uniform,
    cycle_graph,
    fano_plane,
    hypercube_graph,
    neighborhood_hypergraph,
    new_hypergraph,
    path_graph,
    petersen_graph,
    star_graph,
)
from hyperavg.process import (
    SimConfig,
    edge_sequence,
    exact_expected_sq_norms,
    martingale_trace,
    neighborhood_simulate,
    p3_exact,
    run_trials,
    simulate,
    trajectory_states,
)
from hyperavg.spectral import codegree_laplacian, decay_rate_bound, lambda1, neighborhood_identity_holds

from conftest import ACCEPTANCE_LINES, random_hypergraph


@contextmanager
def criterion(number, title, limit_s):
    """Run a criterion body, then record one PASS/FAIL line with its runtime."""
    state = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        in_time = elapsed < limit_s
        verdict = "PASS" if ok and in_time else "FAIL"
        why = "" if ok else " (assertion failed)"
        if ok and not in_time:
            why = " (too slow)"
        line = f"[{verdict}] {number}. {title}: {elapsed:.3f}s / {limit_s:g}s{why} {state['detail']}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert in_time, f"criterion {number} took {elapsed:.3f}s, limit {limit_s}s"


def test_01_example_matrix_exact():
    h = new_hypergraph(4, [[0, 1], [0, 1], [1, 2, 3]])
    expected = np.array([[2, -2, 0, 0], [-2, 4, -1, -1], [0, -1, 2, -1], [0, -1, -1, 2]])
    with criterion(1, "example codegree Laplacian exact", 1e-3):
        L = codegree_laplacian(h)
        assert L.dtype.kind == "i" and np.array_equal(L, expected)


def test_02_spectral_golden_values():
    rng = np.random.default_rng(2)
    with criterion(2, "spectral golden values", 5.0) as st:
        worst = 0.0
        for n in range(3, 51):
            worst = max(worst, abs(lambda1(path_graph(n).as_hypergraph()) - (2 - 2 * math.cos(math.pi / n))))
        for n in range(2, 101):
            worst = max(worst, abs(lambda1(star_graph(n).as_hypergraph()) - 1.0))
        assert worst <= 1e-9
        disc = [lambda1(random_hypergraph(rng, n_max=10, m_max=8, connected=False)) for _ in range(50)]
        conn = [lambda1(random_hypergraph(rng, n_max=10, m_max=8, connected=True)) for _ in range(50)]
        assert max(disc) < 1e-8 and min(conn) > 1e-6
        st["detail"] = f"max golden error {worst:.1e}, max disconnected {max(disc):.1e}, min connected {min(conn):.3f}"


def test_03_decay_bound_exact():
    rng = np.random.default_rng(3)
    with criterion(3, "decay bound, exact enumeration", 30.0) as st:
        worst = -math.inf
        for _ in range(200):
            h = random_hypergraph(rng, n_max=5, m_max=4, connected=True)
            x = rng.normal(size=h.n)
            rho = decay_rate_bound(h)
            sq0 = float(np.sum((x - x.mean()) ** 2))
            vals = exact_expected_sq_norms(h, x, 5)
            bound = sq0 * rho ** np.arange(6)
            worst = max(worst, float(np.max(vals - bound)))
            assert np.all(vals <= bound + 1e-10)
        st["detail"] = f"max excess {worst:.1e}"


def test_04_regular_uniform_equality():
    with criterion(4, "codegree-regular equality", 120.0) as st:
        worst = 0.0
        cases = [(n, r) for n in range(3, 7) for r in range(2, n)]
        for n, r in cases:
            h = complete_r_uniform(n, r)
            for t in range(5):
                rep = verify_theorem3(h=h, t=t)
                assert rep.passed and rep.metadata["rel_error"] <= 1e-10
                worst = max(worst, rep.metadata["rel_error"])
        for t in range(5):
            rep = verify_theorem3(h=fano_plane(), t=t, x=np.array([3.0, -1, 4, 1, -5, 9, 2]))
            assert rep.passed and rep.metadata["rel_error"] <= 1e-10
            worst = max(worst, rep.metadata["rel_error"])
        mc = verify_theorem3(6, 3, 20, cfg=SimConfig(4, 0, 100_000), mode="monte_carlo")
        z = abs(mc.measured - mc.reference) / mc.metadata["stderr"]
        assert z <= 4
        st["detail"] = f"max rel error {worst:.1e}, MC |z| = {z:.2f}"


def test_05_martingale_residual():
    rng = np.random.default_rng(5)
    with criterion(5, "martingale residual", 1.0) as st:
        worst = 0.0
        for h in (complete_graph(4).as_hypergraph(), complete_r_uniform(6, 3)):
            for seed in range(3):
                x = rng.normal(size=h.n)
                x -= x.mean()
                recs = martingale_trace(h, x, SimConfig(seed, 100))
                assert len(recs) == 101
                worst = max(worst, max(r.residual for r in recs))
        assert worst <= 1e-12
        st["detail"] = f"max residual {worst:.1e}"


def test_06_neighborhood_process():
    with criterion(6, "neighborhood identity and bound", 60.0) as st:
        graphs = [cycle_graph(n) for n in range(5, 10)]
        graphs += [complete_graph(4), complete_graph(5), petersen_graph(), hypercube_graph(3)]
        assert all(neighborhood_identity_holds(g) for g in graphs)
        x4 = np.array([1.0, -2.0, 0.5, 4.0])
        for t in range(5):
            assert verify_theorem4(complete_graph(4), x4, t, mode="exact").passed
        rep = verify_theorem4(petersen_graph(), np.arange(10.0), 5, SimConfig(6, 0, 100_000))
        assert rep.passed and rep.metadata["rate"] == pytest.approx(5 / 6)
        st["detail"] = f"Petersen t=5 mean {rep.measured:.4f} vs bound {rep.reference:.4f}"


def test_07_path_counterexamples():
    with criterion(7, "three-vertex path probabilities", 60.0) as st:
        for t in range(1, 31):
            r = p3_exact(t, "prop5")
            assert r.binomial_route >= 0.5 and r.probabilities[0] == r.binomial_route
            assert p3_exact(t, "prop6").probabilities == (0.5, 0.5)
        cfg = SimConfig(7, 0, 1_000_000)
        reps = verify_prop5(10, cfg, mc_times=[5, 10])
        reps += verify_prop6(5, cfg) + verify_prop6(10, SimConfig(8, 0, 1_000_000))
        assert all(r.passed for r in reps)
        mc = [r for r in reps if r.metadata.get("mode") == "monte_carlo"]
        z = max(abs(r.measured - r.reference) / r.metadata["stderr"] for r in mc if r.metadata["stderr"] > 0)
        st["detail"] = f"{len(mc)} sampled frequencies, max |z| = {z:.2f}"


def test_08_figure_scale():
    with criterion(8, "figure-scale curves", 600.0) as st:
        fs = reproduce_figure("FS", n=1000, cfg=SimConfig(0, 0, 32))
        n = 1000
        d0 = fs.mean_delta1[0]
        late = fs.mean_delta1[math.ceil(2 * n * math.log(n))] / d0
        early = fs.mean_delta1[round(n * math.log(n) / 2)] / d0
        assert late < 0.15 and early > 0.5
        ratios = []
        for which in ("F1", "F2"):
            f = reproduce_figure(which, n=40, cfg=SimConfig(0, 0, 32))
            ratios.append(f.mean_delta1[40**3] / f.mean_delta1[0])
        assert max(ratios) < 0.05
        st["detail"] = f"FS {early:.3f} -> {late:.3f}, F1 {ratios[0]:.4f}, F2 {ratios[1]:.4f}"


def _random_graph(rng, n):
    while True:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        g = Graph.from_edges(n, pairs)
        if all(g.adjacency):
            return g


def test_09_process_invariants():
    rng = np.random.default_rng(9)
    with criterion(9, "process invariants", 60.0) as st:
        for case in range(1000):
            h = random_hypergraph(rng, n_max=8, m_max=6)
            x = rng.normal(size=h.n) * 10 ** rng.uniform(-3, 3)
            seed = int(rng.integers(2**63))
            steps = int(rng.integers(1, 40))
            total = math.fsum(x)
            scale = max(1.0, math.fsum(np.abs(x)))
            for y in trajectory_states(h, x, edge_sequence(h.num_edges, seed, steps)):
                assert abs(math.fsum(y) - total) <= 1e-12 * scale
            recs = simulate(h, x, SimConfig(seed, steps))
            sq = [r.sq_norm2 for r in recs]
            assert all(b <= a for a, b in zip(sq, sq[1:]))
            again = run_trials(h, x, SimConfig(seed, steps, 3), collect=None)
            assert np.array_equal(again.mean_sq_norm2, run_trials(h, x, SimConfig(seed, steps, 3)).mean_sq_norm2)
            assert simulate(h, x, SimConfig(seed, steps)) == recs
            g = _random_graph(rng, int(rng.integers(2, 9)))
            z = rng.normal(size=g.n)
            assert neighborhood_simulate(g, z, SimConfig(seed, steps)) == simulate(
                neighborhood_hypergraph(g), z, SimConfig(seed, steps)
            )
        st["detail"] = "1000 cases"
