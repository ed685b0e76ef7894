"""Codegree Laplacian, graph matrices and their spectra.

Matrices are assembled as int64 numpy arrays (entries are integer counts)
and converted to float64 only when handed to the Jacobi eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DegenerateRate,
    Disconnected,
    NoConvergence,
    NotRegular,
    SpectralConnectivityMismatch,
    TooFewVertices,
    VertexOutOfRange,
    ZeroVector,
)
from .hypergraph import Graph, Hypergraph, is_connected, max_edge_size, neighborhood_hypergraph

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
ZERO_EIGENVALUE_REL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    residual: float
    sweeps: int

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __getitem__(self, i: int) -> float:
        return float(self.eigenvalues[i])


def codegree_laplacian(h: Hypergraph) -> np.ndarray:
    L = np.zeros((h.n, h.n), dtype=np.int64)
    for (u, v), d in h.codegrees.items():
        L[u, v] = -d
        L[v, u] = -d
        L[u, u] += d
        L[v, v] += d
    return L


def adjacency_matrix(g: Graph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, nbrs in enumerate(g.adjacency):
        A[u, list(nbrs)] = 1
    return A


def graph_laplacian(g: Graph) -> np.ndarray:
    A = adjacency_matrix(g)
    return np.diag(A.sum(axis=1)) - A


def eigenvalues_symmetric(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    """All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Iterates until the largest off-diagonal magnitude drops below ``tol``.
    Raises :class:`NoConvergence` if ``max_sweeps`` sweeps are not enough.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(m)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not exactly symmetric")
    M = M.astype(np.float64)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    diag, residual, sweeps = kernels.jacobi_eigenvalues(M, tol, max_sweeps)
    if sweeps < 0:
        raise NoConvergence(residual, max_sweeps)
    return Spectrum(np.sort(diag), residual, sweeps)


def zero_threshold(L: np.ndarray) -> float:
    """Cut-off below which a Laplacian eigenvalue counts as zero."""
    n = L.shape[0]
    scale = float(np.trace(L)) / n if n else 0.0
    return ZERO_EIGENVALUE_REL * max(1.0, scale)


def lambda1(h: Hypergraph, tol: float = JACOBI_TOL) -> float:
    """Second-smallest eigenvalue of the codegree Laplacian.

    Cross-checks the answer against union-find connectivity and raises
    :class:`SpectralConnectivityMismatch` if they disagree.
    """
    if h.n < 2:
        raise TooFewVertices("lambda_1 needs at least two vertices")
    L = codegree_laplacian(h)
    spec = eigenvalues_symmetric(L, tol)
    zero = zero_threshold(L)
    lam0, lam1 = spec[0], spec[1]
    if abs(lam0) >= zero:
        raise SpectralConnectivityMismatch(f"smallest eigenvalue {lam0:.3e} is not zero")
    if (lam1 > zero) != is_connected(h):
        raise SpectralConnectivityMismatch(
            f"lambda_1 = {lam1:.3e} (threshold {zero:.1e}) but is_connected = {is_connected(h)}"
        )
    return max(lam1, 0.0)


def rayleigh_quotient(h: Hypergraph, x) -> float:
    x = np.asarray(x, dtype=np.float64)
    norm_sq = math.fsum(x * x)
    if norm_sq == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    num = math.fsum(d * (x[u] - x[v]) ** 2 for (u, v), d in h.codegrees.items())
    return num / norm_sq


def decay_rate_bound(h: Hypergraph) -> float:
    """Per-step contraction factor ``1 - lambda_1 / (r |E|)`` of the mean squared error.

    ``r`` is the largest edge size. Each edge e removes
    ``(1/|e|) sum_{pairs in e} (x_u - x_v)^2`` and ``1/|e| >= 1/r`` only for
    the largest size; using the smallest size can overstate the decay on
    mixed-size hypergraphs.
    """
    r = max_edge_size(h)
    if not is_connected(h):
        raise Disconnected("decay rate needs a connected hypergraph")
    if h.n < 2:
        return 0.0
    rho = 1.0 - lambda1(h) / (r * h.num_edges)
    return min(max(rho, 0.0), 1.0)


def walk_count(g: Graph, k: int, u: int, v: int) -> int:
    for w in (u, v):
        if not 0 <= w < g.n:
            raise VertexOutOfRange(f"vertex {w} not in [0, {g.n})")
    if k < 0:
        raise ValueError("walk length must be non-negative")
    # object dtype keeps Python ints, so no overflow
    A = adjacency_matrix(g).astype(object)
    P = np.identity(g.n, dtype=np.int64).astype(object)
    while k:
        if k & 1:
            P = P.dot(A)
        A = A.dot(A)
        k >>= 1
    return int(P[u, v])


def neighborhood_identity_holds(g: Graph) -> bool:
    """Exact integer check of ``L(H_G) == d^2 I - A(G)^2`` for a d-regular G."""
    d = g.regular_degree()
    if d is None:
        raise NotRegular("graph is not regular")
    A = adjacency_matrix(g)
    rhs = d * d * np.identity(g.n, dtype=np.int64) - A @ A
    return bool(np.array_equal(codegree_laplacian(neighborhood_hypergraph(g)), rhs))


@dataclass(frozen=True)
class NeighborhoodRate:
    degree: int
    lambda1: float
    lambda_max: float
    lambda_prime: float
    rate: float


def neighborhood_rate_details(g: Graph, tol: float = JACOBI_TOL) -> NeighborhoodRate:
    d = g.regular_degree()
    if d is None:
        raise NotRegular("graph is not regular")
    if d == 0:
        raise DegenerateRate("graph has no edges")
    if not neighborhood_identity_holds(g):
        raise ArithmeticError("L(H_G) != d^2 I - A^2 for a regular graph")
    spec = eigenvalues_symmetric(graph_laplacian(g), tol)
    lam1, lam_max = spec[1], spec[len(spec) - 1]
    lam_prime = min(lam1, 2 * d - lam_max)
    gap = lam_prime * (2 * d - lam_prime)
    if gap <= ZERO_EIGENVALUE_REL * d * d:
        raise DegenerateRate(
            f"lambda'(2d - lambda') = {gap:.3e}: graph is disconnected or bipartite"
        )
    return NeighborhoodRate(d, lam1, lam_max, lam_prime, 1.0 - gap / (d * g.n))


def neighborhood_rate(g: Graph) -> float:
    return neighborhood_rate_details(g).rate
