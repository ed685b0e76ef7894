"""Compiled kernels vs the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Prints one line per kernel with the best wall time of each backend and
the speed-up. The fallback is vectorised across trials, so the gap is
smallest for wide batches and largest for the recursive enumeration.
"""

import argparse
import time

import numpy as np

from hyperavg import kernels
from hyperavg.hypergraph import complete_r_uniform, path_graph
from hyperavg.instances import unit_weights
from hyperavg.process import deviation_norms, mean_of
from hyperavg.rng import trial_seeds
from hyperavg.spectral import codegree_laplacian


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    h = path_graph(40).as_hypergraph()
    verts, offsets = h.csr()
    x = unit_weights(h.n)
    xbar = mean_of(x)
    sq0, d10 = deviation_norms(x, xbar)
    seeds = trial_seeds(0, 0, 256)
    yield "run_batch  path:40, 256 trials x 4000 steps", lambda b: b.run_batch(
        verts, offsets, x, xbar, sq0, d10, seeds, 4000
    )

    k = complete_r_uniform(6, 3)
    kv, ko = k.csr()
    y = np.arange(6.0)
    yield "enumerate  knr:6:3, 20^4 sequences", lambda b: b.enumerate_sq_norms(kv, ko, y, mean_of(y), 4)

    L = codegree_laplacian(complete_r_uniform(9, 3)).astype(float)
    A = np.random.default_rng(0).normal(size=(60, 60))
    M = A + A.T
    yield "jacobi     knr:9:3 Laplacian (9x9)", lambda b: b.jacobi_eigenvalues(L, 1e-12, 100)
    yield "jacobi     random symmetric 60x60", lambda b: b.jacobi_eigenvalues(M, 1e-12, 100)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled extension not available; build with `pip install -e .`")
    print(f"{'kernel':44} {'cython':>10} {'python':>10} {'speed-up':>9}")
    for label, run in cases():
        fast = best_of(args.repeat, lambda: run(kernels.compiled))
        slow = best_of(args.repeat, lambda: run(kernels.fallback))
        print(f"{label:44} {fast * 1e3:8.2f}ms {slow * 1e3:8.2f}ms {slow / fast:8.1f}x")


if __name__ == "__main__":
    main()
