"""Checks of the convergence results against exact or Monte Carlo measurements.

Each verifier returns a :class:`VerificationReport` whose verdict depends
only on ``(measured, reference, relation, tolerance)``. Monte Carlo checks
fold ``SE_MULTIPLE`` standard errors into ``tolerance``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import BadParameters, Disconnected
from .hypergraph import (
    Graph,
    Hypergraph,
    complete_r_uniform,
    is_connected,
    max_edge_size,
    neighborhood_hypergraph,
    path_graph,
    star_graph,
)
from .instances import endpoint_weights, unit_weights
from .process import (
    DEFAULT_BUDGET,
    P3_PROP5_START,
    P3_PROP6_START,
    SimConfig,
    deviation_norms,
    exact_expected_sq_norm,
    p3_exact,
    regular_uniform_rate,
    run_neighborhood_trials,
    run_trials,
)
from .spectral import decay_rate_bound, lambda1, neighborhood_rate_details

SE_MULTIPLE = 4.0
BOUND_SLACK = 1e-10
EQUALITY_REL_TOL = 1e-10

RELATIONS = ("<=", "=", ">=")


def judge(measured: float, reference: float, relation: str, tolerance: float) -> bool:
    if relation == "=":
        return abs(measured - reference) <= tolerance * max(1.0, abs(reference))
    if relation == "<=":
        return measured <= reference + tolerance
    if relation == ">=":
        return measured >= reference - tolerance
    raise ValueError(f"unknown relation {relation!r}")


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    measured: float
    reference: float
    relation: str
    tolerance: float
    verdict: str
    metadata: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def make(cls, claim, measured, reference, relation, tolerance, **metadata) -> "VerificationReport":
        ok = judge(measured, reference, relation, tolerance)
        return cls(claim, float(measured), float(reference), relation, float(tolerance), "pass" if ok else "fail", metadata)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _describe(h: Hypergraph | Graph, name: str | None) -> str:
    if name:
        return name
    if isinstance(h, Graph):
        return f"graph(n={h.n}, m={len(h.edge_list)})"
    return f"hypergraph(n={h.n}, m={h.num_edges})"


def _mc_meta(cfg: SimConfig) -> dict[str, Any]:
    return {"mode": "monte_carlo", "seed": cfg.seed, "trials": cfg.trials, "se_multiple": SE_MULTIPLE}


def _exact_fits(m: int, t: int, budget: int) -> bool:
    return t == 0 or m**t <= budget


def verify_theorem2(
    h: Hypergraph,
    x,
    t: int,
    mode: str = "exact",
    cfg: SimConfig | None = None,
    budget: int = DEFAULT_BUDGET,
    name: str | None = None,
) -> VerificationReport:
    """Mean squared error after t steps against ``rho^t ||x - xbar||^2``."""
    if not is_connected(h):
        raise Disconnected("bound is only informative for connected hypergraphs")
    rho = decay_rate_bound(h)
    sq0, _ = deviation_norms(x)
    reference = rho**t * sq0
    meta = {
        "instance": _describe(h, name),
        "t": t,
        "r": max_edge_size(h),
        "edges": h.num_edges,
        "lambda1": lambda1(h) if h.n > 1 else 0.0,
        "rate": rho,
    }
    if mode == "exact":
        measured = exact_expected_sq_norm(h, x, t, budget)
        return VerificationReport.make("theorem2", measured, reference, "<=", BOUND_SLACK, mode="exact", **meta)
    if mode == "monte_carlo":
        cfg = SimConfig(cfg.seed if cfg else 0, t, cfg.trials if cfg else 10_000)
        s = run_trials(h, x, cfg)
        se = float(s.stderr_sq_norm2[t])
        tol = BOUND_SLACK + SE_MULTIPLE * se
        return VerificationReport.make(
            "theorem2", s.mean_sq_norm2[t], reference, "<=", tol, stderr=se, **_mc_meta(cfg), **meta
        )
    raise BadParameters(f"unknown mode {mode!r}")


def corollary_thresholds(h: Hypergraph, c: float) -> tuple[int, int]:
    """Step counts after which the l2 / l1 errors are at most ``e^-c ||x - xbar||_2`` in mean."""
    if c <= 0:
        raise BadParameters("c must be positive")
    if not is_connected(h):
        raise Disconnected("thresholds need a connected hypergraph")
    scale = max_edge_size(h) * h.num_edges / lambda1(h)
    return math.ceil(2 * c * scale), math.ceil((math.log(h.n) + 2 * c) * scale)


def verify_corollary(h: Hypergraph, x, c: float, cfg: SimConfig, name: str | None = None) -> list[VerificationReport]:
    t_l2, t_l1 = corollary_thresholds(h, c)
    steps = max(t_l2, t_l1)
    run_cfg = SimConfig(cfg.seed, steps, cfg.trials)
    l2_vals: list[np.ndarray] = []
    l1_vals: list[np.ndarray] = []

    def collect(sq, d1):
        l2_vals.append(np.sqrt(sq[:, t_l2]))
        l1_vals.append(d1[:, t_l1])

    run_trials(h, x, run_cfg, collect=collect)
    sq0, _ = deviation_norms(x)
    reference = math.exp(-c) * math.sqrt(sq0)
    reports = []
    for claim, vals, t in (("corollary-l2", l2_vals, t_l2), ("corollary-l1", l1_vals, t_l1)):
        v = np.concatenate(vals)
        se = float(v.std(ddof=1) / math.sqrt(len(v))) if len(v) > 1 else 0.0
        reports.append(
            VerificationReport.make(
                claim,
                float(v.mean()),
                reference,
                "<=",
                BOUND_SLACK + SE_MULTIPLE * se,
                instance=_describe(h, name),
                c=c,
                t=t,
                stderr=se,
                **_mc_meta(run_cfg),
            )
        )
    return reports


def verify_theorem3(
    n: int | None = None,
    r: int | None = None,
    t: int = 1,
    cfg: SimConfig | None = None,
    x=None,
    h: Hypergraph | None = None,
    mode: str = "auto",
    budget: int = DEFAULT_BUDGET,
    name: str | None = None,
) -> VerificationReport:
    """Equality ``E||A^t x - xbar||^2 = (1 - (r-1)/(n-1))^t ||x - xbar||^2``.

    Uses the complete r-uniform hypergraph unless ``h`` is given. ``auto``
    enumerates exactly when ``|E|^t`` fits the budget, else samples.
    """
    if h is None:
        if n is None or r is None:
            raise BadParameters("give either h or both n and r")
        h = complete_r_uniform(n, r)
        name = name or f"knr:{n}:{r}"
    r_h, rho = regular_uniform_rate(h)
    if x is None:
        x = np.arange(h.n, dtype=np.float64)
    sq0, _ = deviation_norms(x)
    reference = rho**t * sq0
    meta = {"instance": _describe(h, name), "t": t, "r": r_h, "rate": rho}
    if mode == "auto":
        mode = "exact" if _exact_fits(h.num_edges, t, budget) else "monte_carlo"
    if mode == "exact":
        measured = exact_expected_sq_norm(h, x, t, budget)
        # "=" is relative to max(1, |ref|); shrink so the check is relative to |ref|
        tol = EQUALITY_REL_TOL * abs(reference) / max(1.0, abs(reference))
        rel = abs(measured - reference) / abs(reference) if reference else abs(measured)
        return VerificationReport.make("theorem3", measured, reference, "=", tol, mode="exact", rel_error=rel, **meta)
    if mode == "monte_carlo":
        cfg = SimConfig(cfg.seed if cfg else 0, t, cfg.trials if cfg else 100_000)
        s = run_trials(h, x, cfg)
        se = float(s.stderr_sq_norm2[t])
        tol = SE_MULTIPLE * se / max(1.0, abs(reference))
        return VerificationReport.make(
            "theorem3", s.mean_sq_norm2[t], reference, "=", tol, stderr=se, **_mc_meta(cfg), **meta
        )
    raise BadParameters(f"unknown mode {mode!r}")


def verify_theorem4(
    g: Graph,
    x,
    t: int,
    cfg: SimConfig | None = None,
    mode: str = "monte_carlo",
    budget: int = DEFAULT_BUDGET,
    name: str | None = None,
) -> VerificationReport:
    """Neighbourhood process against ``(1 - lambda'(2d - lambda')/(dn))^t``."""
    details = neighborhood_rate_details(g)  # also checks L(H_G) = d^2 I - A^2 exactly
    sq0, _ = deviation_norms(x)
    reference = details.rate**t * sq0
    meta = {
        "instance": _describe(g, name),
        "t": t,
        "degree": details.degree,
        "lambda1": details.lambda1,
        "lambda_max": details.lambda_max,
        "lambda_prime": details.lambda_prime,
        "rate": details.rate,
        "identity_exact": True,
    }
    if mode == "exact":
        measured = exact_expected_sq_norm(neighborhood_hypergraph(g), x, t, budget)
        return VerificationReport.make("theorem4", measured, reference, "<=", BOUND_SLACK, mode="exact", **meta)
    if mode == "monte_carlo":
        cfg = SimConfig(cfg.seed if cfg else 0, t, cfg.trials if cfg else 100_000)
        s = run_neighborhood_trials(g, x, cfg)
        se = float(s.stderr_sq_norm2[t])
        return VerificationReport.make(
            "theorem4",
            s.mean_sq_norm2[t],
            reference,
            "<=",
            BOUND_SLACK + SE_MULTIPLE * se,
            stderr=se,
            **_mc_meta(cfg),
            **meta,
        )
    raise BadParameters(f"unknown mode {mode!r}")


def _frequency_report(claim, hits: int, total: int, reference: Fraction, cfg: SimConfig, **meta):
    f = hits / total
    se = math.sqrt(f * (1 - f) / total)
    return VerificationReport.make(
        claim, f, float(reference), "=", SE_MULTIPLE * se, stderr=se, hits=hits, **_mc_meta(cfg), **meta
    )


def _p3_mc(start, steps: int, cfg: SimConfig, events) -> dict[tuple[str, int], int]:
    """Count, per (event, t), trials whose ``||x_t||_2^2`` satisfies the event."""
    p3 = path_graph(3).as_hypergraph()
    counts: dict[tuple[str, int], int] = {}

    def collect(sq, _d1):
        for key, t, pred in events:
            counts[(key, t)] = counts.get((key, t), 0) + int(np.count_nonzero(pred(sq[:, t])))

    run_trials(p3, list(start), SimConfig(cfg.seed, steps, cfg.trials), collect=collect)
    return counts


def verify_prop5(t_max: int, cfg: SimConfig | None = None, mc_times=None) -> list[VerificationReport]:
    """Path P3 from (1, -1/2, -1/2): ``P[||A^t x||_2 >= 2^{-t/2}] >= 1/2``.

    Exact reports for every ``t <= t_max``; with ``cfg`` also sampled
    frequencies at ``mc_times`` (default: all t) compared with the exact value.
    """
    if t_max < 1:
        raise BadParameters("t_max must be >= 1")
    reports = []
    exact = {}
    for t in range(1, t_max + 1):
        rep = p3_exact(t, "prop5")
        exact[t] = rep.probabilities[0]
        reports.append(
            VerificationReport.make(
                "prop5",
                float(rep.probabilities[0]),
                0.5,
                ">=",
                0.0,
                mode="exact",
                t=t,
                probability=str(rep.probabilities[0]),
                binomial_route=str(rep.binomial_route),
                exact_holds=rep.holds and rep.probabilities[0] == rep.binomial_route,
                squared_threshold_probability=str(rep.squared_threshold_probability),
            )
        )
    if cfg is not None:
        times = sorted(mc_times) if mc_times else list(range(1, t_max + 1))
        if any(not 1 <= t <= t_max for t in times):
            raise BadParameters("mc_times must lie in 1..t_max")
        events = [("ge", t, (lambda v, t=t: v >= 2.0**-t)) for t in times]
        counts = _p3_mc(P3_PROP5_START, max(times), cfg, events)
        for t in times:
            reports.append(_frequency_report("prop5", counts[("ge", t)], cfg.trials, exact[t], cfg, t=t))
    return reports


def verify_prop6(t: int, cfg: SimConfig | None = None) -> list[VerificationReport]:
    """Path P3 from (1, -1, 0): ``P[||A^t x||_2 = 0] = P[||A^t x||_2 >= 2^{-t}] = 1/2``."""
    rep = p3_exact(t, "prop6")
    zero, tail = rep.probabilities
    reports = [
        VerificationReport.make(
            "prop6", float(zero), 0.5, "=", 0.0, mode="exact", t=t, event="norm == 0", probability=str(zero)
        ),
        VerificationReport.make(
            "prop6",
            float(tail),
            0.5,
            "=",
            0.0,
            mode="exact",
            t=t,
            event="norm >= 2^-t",
            probability=str(tail),
            squared_threshold_probability=str(rep.squared_threshold_probability),
        ),
    ]
    if cfg is not None:
        events = [("zero", t, lambda v: v == 0.0), ("tail", t, (lambda v: v >= 4.0**-t))]
        counts = _p3_mc(P3_PROP6_START, t, cfg, events)
        reports.append(_frequency_report("prop6", counts[("zero", t)], cfg.trials, zero, cfg, t=t, event="norm == 0"))
        reports.append(
            _frequency_report("prop6", counts[("tail", t)], cfg.trials, tail, cfg, t=t, event="norm >= 2^-t")
        )
    return reports


# -- figures and conjecture probes --------------------------------------------

FIGURES = {
    # which: (host builder, weights builder, default n, default t_max)
    "FS": (star_graph, lambda g: unit_weights(g.n), 1000, lambda n: math.ceil(2 * n * math.log(n))),
    "F1": (path_graph, lambda g: endpoint_weights(g.n), 40, lambda n: n**3),
    "F2": (path_graph, lambda g: unit_weights(g.n), 40, lambda n: n**3),
}


@dataclass
class FigureData:
    which: str
    n: int
    trials: int
    seed: int
    t: np.ndarray
    mean_delta1: np.ndarray
    stderr_delta1: np.ndarray
    l2_initial: float

    def rows(self, every: int = 1):
        for i in range(0, len(self.t), every):
            yield int(self.t[i]), float(self.mean_delta1[i]), float(self.stderr_delta1[i])


def reproduce_figure(
    which: str, n: int | None = None, t_max: int | None = None, cfg: SimConfig | None = None
) -> FigureData:
    """Mean l1 distance from the average over time for the star/path figures."""
    if which not in FIGURES:
        raise BadParameters(f"unknown figure {which!r} (expected one of {sorted(FIGURES)})")
    build, weights, n_default, t_default = FIGURES[which]
    n = n_default if n is None else n
    t_max = t_default(n) if t_max is None else t_max
    if t_max < 0:
        raise BadParameters("t_max must be >= 0")
    g = build(n)
    x = weights(g)
    cfg = cfg or SimConfig(0, t_max, 32)
    s = run_trials(g.as_hypergraph(), x, SimConfig(cfg.seed, t_max, cfg.trials))
    sq0, _ = deviation_norms(x)
    return FigureData(which, n, cfg.trials, cfg.seed, np.arange(t_max + 1), s.mean_delta1, s.stderr_delta1, math.sqrt(sq0))


def conjecture_probe(which: str, n: int, cfg: SimConfig | None = None) -> list[dict[str, Any]]:
    """Measured ``E[Delta_1(t)] / ||x - xbar||_2`` at the probe times. Data only, no verdict."""
    if n < 4:
        raise BadParameters("probes need n >= 4")
    cfg = cfg or SimConfig(0, 0, 32)
    if which == "conj1":
        g = star_graph(n)
        cases = [("star", unit_weights(g.n), [(None, 0)] + [(k, round(n * math.log(n) / k)) for k in (8, 4, 2)])]
        label = "k"
    elif which == "conj2":
        g = path_graph(n)
        cases = [
            (name, w(g.n), [(None, 0)] + [(M, M * n**3) for M in (1, 2, 4)])
            for name, w in (("path-endpoints", endpoint_weights), ("path-single", unit_weights))
        ]
        label = "M"
    else:
        raise BadParameters(f"unknown conjecture {which!r}")
    rows = []
    h = g.as_hypergraph()
    for wname, x, probes in cases:
        steps = max(t for _, t in probes)
        s = run_trials(h, x, SimConfig(cfg.seed, steps, cfg.trials))
        l2 = math.sqrt(deviation_norms(x)[0])
        for param, t in probes:
            rows.append(
                {
                    "conjecture": which,
                    "n": n,
                    "weights": wname,
                    label: param,
                    "t": t,
                    "mean_delta1": float(s.mean_delta1[t]),
                    "stderr_delta1": float(s.stderr_delta1[t]),
                    "l2_initial": l2,
                    "ratio": float(s.mean_delta1[t]) / l2,
                    "trials": cfg.trials,
                    "seed": cfg.seed,
                }
            )
    return rows
