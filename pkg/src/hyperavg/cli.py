"""Command-line driver: ``hyperavg {spectrum,simulate,verify,figure,probe}``.

Vertex indices in files and output are 0-based. Exit status is 0 when
every requested verification passes, 1 when any fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from typing import Any, Iterable, Sequence

from . import __version__, kernels
from .errors import HyperavgError
from .experiments import (
    VerificationReport,
    conjecture_probe,
    reproduce_figure,
    verify_corollary,
    verify_prop5,
    verify_prop6,
    verify_theorem2,
    verify_theorem3,
    verify_theorem4,
)
from .hypergraph import Graph, is_codegree_regular, is_connected
from .instances import as_hypergraph, load_instance, load_weights
from .process import DEFAULT_BUDGET, SimConfig, run_neighborhood_trials, run_trials
from .spectral import JACOBI_TOL, codegree_laplacian, decay_rate_bound, eigenvalues_symmetric, lambda1

CLAIMS = ("theorem2", "theorem3", "theorem4", "prop5", "prop6", "corollary")
SIM_COLUMNS = ("t", "mean_sq_norm2", "stderr_sq_norm2", "mean_delta1", "stderr_delta1")


def _instance_flags(p: argparse.ArgumentParser, required: bool) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--input", help=".hg/.gr file (or a builtin name)")
    g.add_argument("--builtin", help="star:n, path:n, cycle:n, complete:n, knr:n:r, petersen, fano, q3")


def _sim_flags(p: argparse.ArgumentParser, steps_default: int | None = None) -> None:
    p.add_argument("--weights", help="CSV file or builtin:star|builtin:path-endpoints|builtin:path-single")
    p.add_argument("--steps", type=int, default=steps_default, help="number of steps t")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperavg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hyperavg {__version__} ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("spectrum", help="codegree Laplacian spectrum and decay rate")
    _instance_flags(p, required=True)
    p.add_argument("--tol", type=float, default=JACOBI_TOL)
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="Monte Carlo trajectories, one CSV row per step")
    _instance_flags(p, required=True)
    _sim_flags(p, steps_default=100)
    p.add_argument("--mode", choices=("edge", "neighborhood"), default="edge")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a convergence claim; exit 1 on failure")
    p.add_argument("--claim", choices=CLAIMS, required=True)
    _instance_flags(p, required=False)
    _sim_flags(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--mc", dest="mode", action="store_const", const="monte_carlo")
    p.add_argument("--c", type=float, default=1.0, help="constant c for --claim corollary")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max edge sequences for exact enumeration")
    p.add_argument("--report", choices=("json", "csv"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("figure", help="mean Delta_1 curve for FS, F1 or F2")
    p.add_argument("--which", choices=("FS", "F1", "F2"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--every", type=int, default=1, help="emit every k-th step")
    p.add_argument("--out")

    p = sub.add_parser("probe", help="exploratory measurements for the two conjectures")
    p.add_argument("--which", choices=("conj1", "conj2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", None) is not None and args.steps < 0:
        parser.error("--steps must be >= 0")
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be >= 1")
    if getattr(args, "seed", 0) < 0:
        parser.error("--seed must be non-negative")
    if args.subcommand == "verify":
        needs_instance = args.claim in ("theorem2", "theorem3", "theorem4", "corollary")
        if needs_instance and args.input is None and args.builtin is None:
            parser.error(f"--claim {args.claim} needs --input or --builtin")
        if args.claim in ("prop5", "prop6", "theorem2", "theorem3", "theorem4") and args.steps is None:
            parser.error(f"--claim {args.claim} needs --steps")
        if args.claim == "corollary" and args.mode == "exact":
            parser.error("--claim corollary is Monte Carlo only")
    if args.subcommand == "figure" and args.every < 1:
        parser.error("--every must be >= 1")
    return args


@contextlib.contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(path: str | None, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> None:
    with _output(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _instance(args):
    return load_instance(args.input if args.input is not None else args.builtin)


def _note_seed(seed: int) -> None:
    print(f"seed={seed}", file=sys.stderr)


def cmd_spectrum(args) -> int:
    obj = _instance(args)
    h = as_hypergraph(obj)
    L = codegree_laplacian(h)
    spec = eigenvalues_symmetric(L, args.tol)
    connected = is_connected(h)
    out: dict[str, Any] = {
        "n": h.n,
        "edges": h.num_edges,
        "eigenvalues": [float(v) for v in spec.eigenvalues],
        "residual": spec.residual,
        "sweeps": spec.sweeps,
        "connected": connected,
        "lambda1": lambda1(h, args.tol) if h.n >= 2 else None,
        "codegree_regular": is_codegree_regular(h) if h.n >= 2 else None,
        "decay_rate": decay_rate_bound(h) if connected and h.edges else None,
    }
    with _output(args.out) as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_simulate(args) -> int:
    obj = _instance(args)
    x = load_weights(args.weights, obj.n)
    cfg = SimConfig(args.seed, args.steps, args.trials or 1)
    _note_seed(cfg.seed)
    if args.mode == "neighborhood":
        if not isinstance(obj, Graph):
            raise HyperavgError("--mode neighborhood needs a graph instance")
        s = run_neighborhood_trials(obj, x, cfg)
    else:
        s = run_trials(as_hypergraph(obj), x, cfg)
    _write_csv(args.out, SIM_COLUMNS, s.rows())
    return 0


def _run_verify(args) -> list[VerificationReport]:
    claim = args.claim
    cfg = SimConfig(args.seed, args.steps or 0, args.trials or 100_000)
    if claim == "prop5":
        mc = cfg if args.mode == "monte_carlo" else None
        return verify_prop5(args.steps, mc)
    if claim == "prop6":
        mc = cfg if args.mode == "monte_carlo" else None
        return verify_prop6(args.steps, mc)
    obj = _instance(args)
    name = args.input or args.builtin
    x = load_weights(args.weights, obj.n)
    if claim == "theorem4":
        if not isinstance(obj, Graph):
            raise HyperavgError("theorem4 needs a graph instance")
        return [verify_theorem4(obj, x, args.steps, cfg, args.mode or "monte_carlo", args.budget, name)]
    h = as_hypergraph(obj)
    if claim == "theorem2":
        return [verify_theorem2(h, x, args.steps, args.mode or "exact", cfg, args.budget, name)]
    if claim == "theorem3":
        return [verify_theorem3(t=args.steps, cfg=cfg, x=x, h=h, mode=args.mode or "auto", budget=args.budget, name=name)]
    return verify_corollary(h, x, args.c, cfg, name)


def cmd_verify(args) -> int:
    _note_seed(args.seed)
    reports = _run_verify(args)
    if args.report == "json":
        with _output(args.out) as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2)
            fh.write("\n")
    else:
        cols = ("claim", "measured", "reference", "relation", "tolerance", "verdict", "metadata")
        rows = ([r.claim, r.measured, r.reference, r.relation, r.tolerance, r.verdict, json.dumps(r.metadata)] for r in reports)
        _write_csv(args.out, cols, rows)
    for r in reports:
        print(f"{r.claim}: {r.verdict} (measured {r.measured:.6g} {r.relation} {r.reference:.6g})", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_figure(args) -> int:
    _note_seed(args.seed)
    data = reproduce_figure(args.which, args.n, args.t_max, SimConfig(args.seed, 0, args.trials))
    _write_csv(args.out, ("t", "mean_delta1", "stderr_delta1"), data.rows(args.every))
    return 0


def cmd_probe(args) -> int:
    _note_seed(args.seed)
    rows = conjecture_probe(args.which, args.n, SimConfig(args.seed, 0, args.trials))
    header = list(rows[0])
    _write_csv(args.out, header, ([r[k] for k in header] for r in rows))
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "figure": cmd_figure,
    "probe": cmd_probe,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    try:
        return COMMANDS[args.subcommand](args)
    except (HyperavgError, OSError) as exc:
        print(f"hyperavg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
