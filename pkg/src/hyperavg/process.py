"""The randomized averaging process.

Single steps, seeded trajectories (edge and neighbourhood variants),
multi-trial Monte Carlo statistics, exact expectations by enumeration,
the rescaled martingale for codegree-regular uniform hypergraphs, and
exact probabilities for the two three-vertex path examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import BadParameters, BudgetExceeded, IsolatedVertex, NoEdges, NotCodegreeRegular, NotUniform
from .hypergraph import Graph, Hypergraph, is_codegree_regular
from .rng import SplitMix64, trial_seed, trial_seeds

DEFAULT_BUDGET = 10**7
CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    steps: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.steps < 0:
            raise BadParameters("steps must be >= 0")
        if self.trials < 1:
            raise BadParameters("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise BadParameters("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class TrajectoryRecord:
    step: int
    sq_norm2: float
    delta1: float
    chosen_edge: int | None  # None for the initial state


@dataclass(frozen=True)
class MartingaleRecord:
    step: int
    s_sq_norm: float
    residual: float  # relative one-step conditional-expectation residual; 0 at step 0


def _as_weights(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise ValueError(f"weight vector has shape {x.shape}, expected ({n},)")
    if not np.all(np.isfinite(x)):
        raise ValueError("weight vector has non-finite entries")
    return x


def mean_of(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    return math.fsum(x) / len(x)


def mean_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return np.full(len(x), mean_of(x))


def deviation_norms(x, xbar: float | None = None) -> tuple[float, float]:
    """``(||x - xbar||_2^2, ||x - xbar||_1)`` with compensated sums."""
    x = np.asarray(x, dtype=np.float64)
    if xbar is None:
        xbar = mean_of(x)
    dev = x - xbar
    return math.fsum(dev * dev), math.fsum(np.abs(dev))


def average_step(x, e: Sequence[int]) -> np.ndarray:
    y = np.array(x, dtype=np.float64, copy=True)
    idx = list(e)
    s = y[idx[0]]
    for v in idx[1:]:
        s += y[v]
    y[idx] = s / len(idx)
    return y


def edge_sequence(m: int, seed: int, steps: int, trial: int = 0) -> list[int]:
    """Edge indices chosen by trial ``trial`` of a run seeded with ``seed``."""
    gen = SplitMix64(trial_seed(seed, trial))
    return [gen.index(m) for _ in range(steps)]


def trajectory_states(h: Hypergraph, x, edges: Sequence[int]) -> list[np.ndarray]:
    """States ``x_0, ..., x_T`` after applying the given edge indices in order."""
    states = [np.array(x, dtype=np.float64)]
    for i in edges:
        states.append(average_step(states[-1], h.edges[i]))
    return states


def _simulate_csr(verts, offsets, n, x, cfg: SimConfig, m: int) -> list[TrajectoryRecord]:
    x = _as_weights(x, n)
    xbar = mean_of(x)
    sq0, d10 = deviation_norms(x, xbar)
    seeds = np.array([trial_seed(cfg.seed, 0)], dtype=np.uint64)
    sq, d1 = kernels.run_batch(verts, offsets, x, xbar, sq0, d10, seeds, cfg.steps)
    chosen = [None] + edge_sequence(m, cfg.seed, cfg.steps)
    return [TrajectoryRecord(t, float(sq[0, t]), float(d1[0, t]), chosen[t]) for t in range(cfg.steps + 1)]


def simulate(h: Hypergraph, x, cfg: SimConfig) -> list[TrajectoryRecord]:
    """One trajectory (trial 0 of ``cfg.seed``); ``cfg.trials`` is ignored."""
    if not h.edges:
        raise NoEdges("cannot simulate on a hypergraph without edges")
    verts, offsets = h.csr()
    return _simulate_csr(verts, offsets, h.n, x, cfg, h.num_edges)


def _neighborhood_csr(g: Graph) -> tuple[list[int], list[int]]:
    verts: list[int] = []
    offsets = [0]
    for u, nbrs in enumerate(g.adjacency):
        if not nbrs:
            raise IsolatedVertex(f"vertex {u} has no neighbours")
        verts.extend(nbrs)
        offsets.append(len(verts))
    return verts, offsets


def neighborhood_simulate(g: Graph, x, cfg: SimConfig) -> list[TrajectoryRecord]:
    """Neighbourhood averaging: pick a uniform vertex u, average over N(u).

    ``chosen_edge`` holds the selected vertex u.
    """
    verts, offsets = _neighborhood_csr(g)
    return _simulate_csr(verts, offsets, g.n, x, cfg, g.n)


# -- multi-trial statistics ---------------------------------------------------


class _RunningMoments:
    """Column-wise mean and M2, merged chunk by chunk (Chan et al.)."""

    def __init__(self, width: int):
        self.count = 0
        self.mean = np.zeros(width)
        self.m2 = np.zeros(width)

    def update(self, block: np.ndarray) -> None:
        k = block.shape[0]
        bmean = block.mean(axis=0)
        bm2 = ((block - bmean) ** 2).sum(axis=0)
        total = self.count + k
        delta = bmean - self.mean
        self.mean = self.mean + delta * (k / total)
        self.m2 = self.m2 + bm2 + delta**2 * (self.count * k / total)
        self.count = total

    def stderr(self) -> np.ndarray:
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


@dataclass
class TrialSummary:
    trials: int
    steps: int
    mean_sq_norm2: np.ndarray
    stderr_sq_norm2: np.ndarray
    mean_delta1: np.ndarray
    stderr_delta1: np.ndarray

    def rows(self) -> Iterator[tuple[int, float, float, float, float]]:
        for t in range(self.steps + 1):
            yield (
                t,
                float(self.mean_sq_norm2[t]),
                float(self.stderr_sq_norm2[t]),
                float(self.mean_delta1[t]),
                float(self.stderr_delta1[t]),
            )


ChunkCallback = Callable[[np.ndarray, np.ndarray], None]


def _iter_chunks(verts, offsets, x, cfg: SimConfig, chunk: int | None):
    xbar = mean_of(x)
    sq0, d10 = deviation_norms(x, xbar)
    if chunk is None:
        chunk = max(1, CHUNK_CELLS // (cfg.steps + 1))
    for start in range(0, cfg.trials, chunk):
        count = min(chunk, cfg.trials - start)
        seeds = trial_seeds(cfg.seed, start, count)
        yield kernels.run_batch(verts, offsets, x, xbar, sq0, d10, seeds, cfg.steps)


def _run_trials_csr(verts, offsets, n, x, cfg, collect, chunk) -> TrialSummary:
    x = _as_weights(x, n)
    sq_m = _RunningMoments(cfg.steps + 1)
    d1_m = _RunningMoments(cfg.steps + 1)
    for sq, d1 in _iter_chunks(verts, offsets, x, cfg, chunk):
        sq_m.update(sq)
        d1_m.update(d1)
        if collect is not None:
            collect(sq, d1)
    return TrialSummary(cfg.trials, cfg.steps, sq_m.mean, sq_m.stderr(), d1_m.mean, d1_m.stderr())


def run_trials(
    h: Hypergraph, x, cfg: SimConfig, collect: ChunkCallback | None = None, chunk: int | None = None
) -> TrialSummary:
    """Monte Carlo over ``cfg.trials`` independent trajectories.

    ``collect`` receives each chunk's raw ``(sq, d1)`` arrays, shape
    ``(chunk_trials, steps + 1)``, for statistics beyond mean and stderr.
    Per-trial values do not depend on ``chunk``.
    """
    if not h.edges:
        raise NoEdges("cannot simulate on a hypergraph without edges")
    verts, offsets = h.csr()
    return _run_trials_csr(verts, offsets, h.n, x, cfg, collect, chunk)


def run_neighborhood_trials(
    g: Graph, x, cfg: SimConfig, collect: ChunkCallback | None = None, chunk: int | None = None
) -> TrialSummary:
    verts, offsets = _neighborhood_csr(g)
    return _run_trials_csr(verts, offsets, g.n, x, cfg, collect, chunk)


# -- exact quantities ---------------------------------------------------------


def edge_drop(x, e: Sequence[int]) -> float:
    """``||x||^2 - ||A_e x||^2 = (1/|e|) sum over pairs in e of (x_u - x_v)^2``."""
    vals = [float(x[u]) for u in e]
    pairs = [(a - b) ** 2 for i, a in enumerate(vals) for b in vals[i + 1 :]]
    return math.fsum(pairs) / len(vals)


def one_step_expected_drop(h: Hypergraph, x) -> float:
    if not h.edges:
        raise NoEdges("expected drop needs at least one edge")
    x = _as_weights(x, h.n)
    return math.fsum(edge_drop(x, e) for e in h.edges) / h.num_edges


def exact_expected_sq_norms(h: Hypergraph, x, t: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``E ||A^s x - xbar||_2^2`` for ``s = 0..t`` by enumerating every edge sequence."""
    if t < 0:
        raise ValueError("t must be >= 0")
    x = _as_weights(x, h.n)
    if t > 0 and not h.edges:
        raise NoEdges("expected value after t > 0 steps needs at least one edge")
    m = h.num_edges
    if t > 0 and m**t > budget:
        raise BudgetExceeded(f"{m}^{t} = {m**t} edge sequences exceed the budget of {budget}")
    verts, offsets = h.csr() if h.edges else ([], [0])
    sums = kernels.enumerate_sq_norms(verts, offsets, x, mean_of(x), t)
    return np.array([sums[s] / float(m**s) if s else sums[0] for s in range(t + 1)])


def exact_expected_sq_norm(h: Hypergraph, x, t: int, budget: int = DEFAULT_BUDGET) -> float:
    return float(exact_expected_sq_norms(h, x, t, budget)[t])


def regular_uniform_rate(h: Hypergraph) -> tuple[int, float]:
    """``(r, 1 - (r-1)/(n-1))`` for an r-uniform codegree-regular hypergraph."""
    r = h.is_uniform()
    if r is None:
        raise NotUniform("hypergraph is not uniform")
    d = is_codegree_regular(h)
    if not d:
        raise NotCodegreeRegular("hypergraph is not codegree regular with d >= 1")
    return r, 1.0 - (r - 1) / (h.n - 1)


def martingale_trace(h: Hypergraph, x, cfg: SimConfig, mean_tol: float = 1e-12) -> list[MartingaleRecord]:
    """``||A^t x||^2 / rho^t`` along trial 0, with its conditional-expectation residual.

    ``residual`` at step t is ``|E[S_t | S_{t-1}] / S_{t-1} - 1|``, using
    the exact one-step expected drop from the state at step ``t - 1``.
    """
    r, rho = regular_uniform_rate(h)
    if rho == 0.0:
        raise BadParameters("r = n: the process hits the mean in one step, nothing to rescale")
    x = _as_weights(x, h.n)
    scale = max(1.0, float(np.max(np.abs(x)))) if h.n else 1.0
    if abs(mean_of(x)) > mean_tol * scale:
        raise ValueError("martingale trace needs a mean-zero weight vector")
    y = x.copy()
    # centre on the current mean: rounding lets the mean drift away from 0,
    # and once ||y|| has decayed that drift would dominate the identity
    yc = y - mean_of(y)
    cur = math.fsum(yc * yc)
    records = [MartingaleRecord(0, cur, 0.0)]
    for t, i in enumerate(edge_sequence(h.num_edges, cfg.seed, cfg.steps), start=1):
        expected = cur - one_step_expected_drop(h, yc)
        residual = abs(expected / (rho * cur) - 1.0) if cur > 0.0 else 0.0
        y = average_step(y, h.edges[i])
        yc = y - mean_of(y)
        cur = math.fsum(yc * yc)
        records.append(MartingaleRecord(t, cur / rho**t, residual))
    return records


# -- the three-vertex path examples -------------------------------------------

P3_PROP5_START = (1.0, -0.5, -0.5)
P3_PROP6_START = (1.0, -1.0, 0.0)


def p3_state(D: int) -> tuple[Fraction, Fraction, Fraction]:
    """State of the path 0-1-2 started at (1, -1/2, -1/2) after D effective moves."""
    a = Fraction(1, 2**D)
    if D % 2 == 0:
        return (a, -a / 2, -a / 2)
    return (a / 2, a / 2, -a)


def p3_sq_norm(D: int) -> Fraction:
    return sum((c * c for c in p3_state(D)), Fraction(0))


@dataclass(frozen=True)
class P3Report:
    which: str
    t: int
    probabilities: tuple[Fraction, ...]
    binomial_route: Fraction | None
    squared_threshold_probability: Fraction

    @property
    def holds(self) -> bool:
        if self.which == "prop5":
            return self.probabilities[0] >= Fraction(1, 2)
        return self.probabilities == (Fraction(1, 2), Fraction(1, 2))


def _binomial(t: int, D: int) -> Fraction:
    return Fraction(comb(t, D), 2**t)


def p3_exact(t: int, which: str) -> P3Report:
    """Exact event probabilities for the two path examples.

    The number D of steps that change the state is Binomial(t, 1/2), and
    ``||A^t x||_2^2 = (3/2) 4^-D``. Events are judged on the unsquared
    norm (``||.||_2 >= 2^{-t/2}`` and ``||.||_2 >= 2^{-t}``), the form under
    which both claims hold for every t. ``squared_threshold_probability``
    reports the same events with the threshold applied to ``||.||_2^2``.
    """
    if t < 1:
        raise BadParameters("t must be >= 1")
    if which == "prop5":
        thr = Fraction(1, 2**t)  # ||.||_2^2 >= 2^{-t}
        prob = sum((_binomial(t, D) for D in range(t + 1) if p3_sq_norm(D) >= thr), Fraction(0))
        route = sum((_binomial(t, i) for i in range(t // 2 + 1)), Fraction(0))
        # ||.||_2^2 >= 2^{-t/2}  <=>  ||.||_2^4 >= 2^{-t}
        sq_prob = sum((_binomial(t, D) for D in range(t + 1) if p3_sq_norm(D) ** 2 >= thr), Fraction(0))
        return P3Report(which, t, (prob,), route, sq_prob)
    if which == "prop6":
        # first step: edge {0,1} zeroes the state, edge {1,2} gives (1, -1/2, -1/2)
        half = Fraction(1, 2)
        zero = half
        thr = Fraction(1, 4**t)  # ||.||_2^2 >= 4^{-t}
        ge = half * sum((_binomial(t - 1, D) for D in range(t) if p3_sq_norm(D) >= thr), Fraction(0))
        sq_thr = Fraction(1, 2**t)
        sq_ge = half * sum((_binomial(t - 1, D) for D in range(t) if p3_sq_norm(D) >= sq_thr), Fraction(0))
        return P3Report(which, t, (zero, ge), None, sq_ge)
    raise BadParameters(f"unknown example {which!r} (expected prop5 or prop6)")
