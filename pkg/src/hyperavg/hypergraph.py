"""Hypergraphs, simple graphs and the constructions built on them.

Vertices are dense 0-based indices. A hypergraph's edge collection is a
multiset stored as a tuple with repetition, so drawing a uniform index
is the same as drawing a uniform edge with multiplicity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadParameters,
    DuplicateVertexInEdge,
    EmptyEdge,
    IsolatedVertex,
    NoEdges,
    NonIntegralCount,
    SameVertex,
    TooFewVertices,
    VertexOutOfRange,
)

Edge = tuple[int, ...]


def _check_vertex(n: int, u: int) -> None:
    if not 0 <= u < n:
        raise VertexOutOfRange(f"vertex {u} not in [0, {n})")


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus a multiset of edges.

    Build instances with :func:`new_hypergraph`; the constructor trusts its
    input to already be canonical (sorted, distinct, in range).
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def codegrees(self) -> dict[tuple[int, int], int]:
        """Nonzero codegrees keyed by ``(u, v)`` with ``u < v``."""
        counts: Counter[tuple[int, int]] = Counter()
        for e in self.edges:
            counts.update(combinations(e, 2))
        return dict(counts)

    def csr(self) -> tuple[list[int], list[int]]:
        """Flattened edge vertices and offsets, the layout the kernels take."""
        verts: list[int] = []
        offsets = [0]
        for e in self.edges:
            verts.extend(e)
            offsets.append(len(verts))
        return verts, offsets

    def is_uniform(self) -> int | None:
        """Common edge size, or None when sizes differ or there are no edges."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph as sorted neighbour tuples."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise BadParameters("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for pair in pairs:
            if len(pair) != 2:
                raise BadParameters(f"graph edge {tuple(pair)} must have two endpoints")
            u, v = int(pair[0]), int(pair[1])
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise BadParameters(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise BadParameters(f"parallel edge {{{u}, {v}}}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def regular_degree(self) -> int | None:
        degrees = {len(a) for a in self.adjacency}
        return degrees.pop() if len(degrees) == 1 else None

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, tuple(self.edge_list))

    def is_bipartite(self) -> bool:
        colour = [-1] * self.n
        for start in range(self.n):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self.adjacency[u]:
                    if colour[v] < 0:
                        colour[v] = 1 - colour[u]
                        stack.append(v)
                    elif colour[v] == colour[u]:
                        return False
        return True


@dataclass(frozen=True)
class MultigraphEdgeList:
    n: int
    pairs: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def multiplicity(self) -> Counter[tuple[int, int]]:
        return Counter(self.pairs)


def new_hypergraph(n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    if n < 0:
        raise BadParameters("vertex count must be non-negative")
    canon: list[Edge] = []
    for raw in edges:
        e = [int(v) for v in raw]
        if not e:
            raise EmptyEdge(f"edge #{len(canon)} is empty")
        for v in e:
            _check_vertex(n, v)
        s = tuple(sorted(e))
        if any(a == b for a, b in zip(s, s[1:])):
            raise DuplicateVertexInEdge(f"edge #{len(canon)} {tuple(e)} repeats a vertex")
        canon.append(s)
    return Hypergraph(n, tuple(canon))


def codegree(h: Hypergraph, u: int, v: int) -> int:
    _check_vertex(h.n, u)
    _check_vertex(h.n, v)
    if u == v:
        raise SameVertex(f"codegree needs two distinct vertices, got {u} twice")
    if u > v:
        u, v = v, u
    return h.codegrees.get((u, v), 0)


def min_edge_size(h: Hypergraph) -> int:
    if not h.edges:
        raise NoEdges("hypergraph has no edges")
    return min(len(e) for e in h.edges)


def max_edge_size(h: Hypergraph) -> int:
    if not h.edges:
        raise NoEdges("hypergraph has no edges")
    return max(len(e) for e in h.edges)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.components -= 1
        return True


def is_connected(h: Hypergraph) -> bool:
    if h.n <= 1:
        return True
    uf = UnionFind(h.n)
    for e in h.edges:
        for v in e[1:]:
            uf.union(e[0], v)
    return uf.components == 1


def is_codegree_regular(h: Hypergraph) -> int | None:
    if h.n < 2:
        raise TooFewVertices("codegree regularity needs at least two vertices")
    cd = h.codegrees
    total_pairs = h.n * (h.n - 1) // 2
    if len(cd) < total_pairs:
        # some pair has codegree 0, so every pair must
        return 0 if not cd else None
    values = set(cd.values())
    return values.pop() if len(values) == 1 else None


def clique_expansion(h: Hypergraph) -> MultigraphEdgeList:
    pairs: list[tuple[int, int]] = []
    for e in h.edges:
        pairs.extend(combinations(e, 2))
    return MultigraphEdgeList(h.n, tuple(pairs))


def neighborhood_hypergraph(g: Graph) -> Hypergraph:
    """One edge per vertex u, namely N(u); edge index equals vertex index."""
    for u, nbrs in enumerate(g.adjacency):
        if not nbrs:
            raise IsolatedVertex(f"vertex {u} has no neighbours")
    return Hypergraph(g.n, tuple(g.adjacency))


def codegree_regular_edge_count(n: int, r: int, d: int) -> int:
    if not (2 <= r <= n) or d < 1:
        raise BadParameters(f"need 2 <= r <= n and d >= 1, got n={n}, r={r}, d={d}")
    num, den = n * (n - 1) * d, r * (r - 1)
    if num % den:
        raise NonIntegralCount(f"{num}/{den} is not an integer: no such hypergraph")
    return num // den


# -- standard families ------------------------------------------------------


def complete_r_uniform(n: int, r: int) -> Hypergraph:
    if not 2 <= r <= n:
        raise BadParameters(f"complete r-uniform hypergraph needs 2 <= r <= n, got n={n}, r={r}")
    return Hypergraph(n, tuple(combinations(range(n), r)))


def path_graph(n: int) -> Graph:
    if n < 2:
        raise BadParameters("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star with n leaves, n + 1 vertices, centre 0."""
    if n < 2:
        raise BadParameters("star needs n >= 2 leaves")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise BadParameters("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise BadParameters("complete graph needs n >= 2")
    return Graph.from_edges(n, combinations(range(n), 2))


def petersen_graph() -> Graph:
    # outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def hypercube_graph(dim: int = 3) -> Graph:
    if dim < 1:
        raise BadParameters("hypercube dimension must be >= 1")
    n = 1 << dim
    return Graph.from_edges(n, [(u, u ^ (1 << b)) for u in range(n) for b in range(dim) if u < u ^ (1 << b)])


FANO_LINES: tuple[Edge, ...] = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)


def fano_plane() -> Hypergraph:
    """The Steiner triple system S(2, 3, 7): every pair lies on one line."""
    return Hypergraph(7, FANO_LINES)

