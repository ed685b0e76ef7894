"""Named instances and builtin weight vectors.

Builtin names (all 0-based):

=================  ==========================================================
``star:n``         star with n leaves, n + 1 vertices, centre 0
``path:n``         path 0 - 1 - ... - n-1
``cycle:n``        cycle on n vertices
``complete:n``     complete graph K_n
``knr:n:r``        complete r-uniform hypergraph (all r-subsets of n vertices)
``petersen``       Petersen graph (outer cycle 0..4, spokes i--i+5, pentagram)
``fano``           Fano plane, lines listed in ``hypergraph.FANO_LINES``
``q3``             3-dimensional hypercube, u ~ v iff they differ in one bit
=================  ==========================================================
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import BadParameters, ParseError, UnknownBuiltin
from .hypergraph import (
    Graph,
    Hypergraph,
    complete_graph,
    complete_r_uniform,
    cycle_graph,
    fano_plane,
    hypercube_graph,
    path_graph,
    petersen_graph,
    star_graph,
)
from .io import read_instance

_FIXED = {"petersen": petersen_graph, "fano": fano_plane, "q3": hypercube_graph}
_SIZED = {"star": star_graph, "path": path_graph, "cycle": cycle_graph, "complete": complete_graph}


def builtin(name: str) -> Hypergraph | Graph:
    head, *args = name.split(":")
    try:
        params = [int(a) for a in args]
    except ValueError:
        raise UnknownBuiltin(f"non-integer parameter in builtin {name!r}") from None
    if head in _FIXED and not params:
        return _FIXED[head]()
    if head in _SIZED and len(params) == 1:
        return _SIZED[head](params[0])
    if head == "knr" and len(params) == 2:
        return complete_r_uniform(*params)
    raise UnknownBuiltin(f"unknown builtin {name!r}")


def load_instance(source: str) -> Hypergraph | Graph:
    """A builtin name, or a path to a ``.hg`` / ``.gr`` file."""
    path = Path(source)
    if path.suffix in (".hg", ".gr"):
        return read_instance(path)
    return builtin(source)


def as_hypergraph(obj: Hypergraph | Graph) -> Hypergraph:
    return obj.as_hypergraph() if isinstance(obj, Graph) else obj


def unit_weights(n: int) -> np.ndarray:
    """``1 - 1/n`` on vertex 0 and ``-1/n`` elsewhere: mean zero, one spike."""
    x = np.full(n, -1.0 / n)
    x[0] = 1.0 - 1.0 / n
    return x


def endpoint_weights(n: int) -> np.ndarray:
    """``+1`` on vertex 0, ``-1`` on vertex n-1, 0 elsewhere."""
    if n < 2:
        raise BadParameters("endpoint weights need n >= 2")
    x = np.zeros(n)
    x[0], x[-1] = 1.0, -1.0
    return x


BUILTIN_WEIGHTS = {
    "star": unit_weights,
    "path-single": unit_weights,
    "path-endpoints": endpoint_weights,
}


def parse_weights(text: str, source: str = "<weights>") -> np.ndarray:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for tok in line.replace(",", " ").split():
            try:
                values.append(float(tok))
            except ValueError:
                raise ParseError(f"not a number: {tok!r}", lineno, source) from None
    return np.array(values)


def load_weights(spec: str | None, n: int) -> np.ndarray:
    """``builtin:<name>``, a CSV path, or None for ``unit_weights``."""
    if spec is None:
        return unit_weights(n)
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTIN_WEIGHTS:
            raise UnknownBuiltin(f"unknown builtin weights {name!r}")
        return BUILTIN_WEIGHTS[name](n)
    x = parse_weights(Path(spec).read_text(), spec)
    if len(x) != n:
        raise ParseError(f"{len(x)} weights for {n} vertices", None, spec)
    return x
