"""Plain-text instance formats.

``.hg``: first line ``n m``, then m lines of space-separated vertex indices.
``.gr``: first line ``n m``, then m lines ``u v``.
Indices are 0-based. Lines starting with ``#`` and blank lines are skipped.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, TextIO

from .errors import HyperavgError, ParseError
from .hypergraph import Graph, Hypergraph, new_hypergraph


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def _ints(tokens: list[str], lineno: int, source: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno, source) from None


def _parse_body(text: str, source: str) -> tuple[int, int, list[tuple[int, list[int]]]]:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'n m' header", None, source)
    lineno, header = lines[0]
    if len(header) != 2:
        raise ParseError("header must be 'n m'", lineno, source)
    n, m = _ints(header, lineno, source)
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno, source)
    body = [(ln, _ints(tok, ln, source)) for ln, tok in lines[1:]]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow", lineno, source)
    return n, m, body


def parse_hypergraph(text: str, source: str = "<string>") -> Hypergraph:
    n, _, body = _parse_body(text, source)
    edges = []
    for lineno, verts in body:
        try:
            edges.append(new_hypergraph(n, [verts]).edges[0])
        except HyperavgError as exc:
            raise ParseError(str(exc), lineno, source) from None
    return Hypergraph(n, tuple(edges))


def parse_graph(text: str, source: str = "<string>") -> Graph:
    n, _, body = _parse_body(text, source)
    for lineno, pair in body:
        if len(pair) != 2:
            raise ParseError("graph edge lines need exactly two vertices", lineno, source)
    try:
        return Graph.from_edges(n, [p for _, p in body])
    except HyperavgError as exc:
        raise ParseError(str(exc), None, source) from None


def read_instance(path: str | Path) -> Hypergraph | Graph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".gr":
        return parse_graph(text, str(path))
    if path.suffix == ".hg":
        return parse_hypergraph(text, str(path))
    raise ParseError(f"unknown extension {path.suffix!r} (expected .hg or .gr)", None, str(path))


def dump_instance(obj: Hypergraph | Graph, fh: TextIO) -> None:
    if isinstance(obj, Graph):
        pairs = obj.edge_list
        fh.write(f"{obj.n} {len(pairs)}\n")
        for u, v in pairs:
            fh.write(f"{u} {v}\n")
    else:
        fh.write(f"{obj.n} {obj.num_edges}\n")
        for e in obj.edges:
            fh.write(" ".join(map(str, e)) + "\n")


def write_instance(obj: Hypergraph | Graph, path: str | Path) -> None:
    with open(path, "w", newline="\n") as fh:
        dump_instance(obj, fh)
