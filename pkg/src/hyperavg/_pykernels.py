"""Pure Python / numpy kernels.

Same contracts and the same floating-point operation order as the compiled
``_kernels`` module, so both backends return bit-identical trajectories
and enumeration sums. Jacobi agrees to rounding only.
"""

from __future__ import annotations

import math

import numpy as np

from .rng import draw_matrix

BACKEND = "python"


def run_batch(verts, offsets, x0, xbar, sq0, d10, seeds, steps):
    """Run ``len(seeds)`` independent trajectories of the averaging process.

    Returns ``(sq, d1)``, each of shape ``(trials, steps + 1)``, holding
    ``||x_t - xbar||_2^2`` and ``||x_t - xbar||_1`` updated incrementally
    from ``sq0`` and ``d10``.
    """
    verts = np.asarray(verts, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    x0 = np.asarray(x0, dtype=np.float64)
    seeds = np.asarray(seeds, dtype=np.uint64)
    n = x0.shape[0]
    m = offsets.shape[0] - 1
    trials = seeds.shape[0]

    sizes = np.diff(offsets)
    kmax = int(sizes.max())
    # pad short edges with a dummy column n that always holds 0.0
    pad = np.full((m, kmax), n, dtype=np.int64)
    for i in range(m):
        pad[i, : sizes[i]] = verts[offsets[i] : offsets[i + 1]]

    X = np.zeros((trials, n + 1))
    X[:, :n] = x0
    sq = np.empty((trials, steps + 1))
    d1 = np.empty((trials, steps + 1))
    sq[:, 0] = sq0
    d1[:, 0] = d10
    if steps == 0:
        return sq, d1

    choices = draw_matrix(seeds, steps, m)
    rows = np.arange(trials)
    cur_sq = np.full(trials, float(sq0))
    cur_d1 = np.full(trials, float(d10))
    for t in range(steps):
        c = choices[:, t]
        V = pad[c]
        k = sizes[c]
        s = X[rows, V[:, 0]].copy()
        for j in range(1, kmax):
            s += X[rows, V[:, j]]
        mean = s / k
        dsq = np.zeros(trials)
        acc = np.zeros(trials)
        for j in range(kmax):
            old = X[rows, V[:, j]]
            valid = j < k
            diff = old - mean
            dsq += np.where(valid, diff * diff, 0.0)
            acc += np.where(valid, np.abs(old - xbar), 0.0)
        X[rows[:, None], V] = mean[:, None]
        X[:, n] = 0.0
        cur_sq = cur_sq - dsq
        np.maximum(cur_sq, 0.0, out=cur_sq)
        cur_d1 = cur_d1 + (k * np.abs(mean - xbar) - acc)
        np.maximum(cur_d1, 0.0, out=cur_d1)
        sq[:, t + 1] = cur_sq
        d1[:, t + 1] = cur_d1
    return sq, d1


def _neumaier(total, comp, value):
    t = total + value
    if abs(total) >= abs(value):
        comp += (total - t) + value
    else:
        comp += (value - t) + total
    return t, comp


def enumerate_sq_norms(verts, offsets, x0, xbar, t_max):
    """Sum of ``||y - xbar||^2`` over every edge sequence, per depth.

    Entry ``k`` is the (compensated) sum over all ``m**k`` sequences of
    length ``k``, visited depth-first in lexicographic order.
    """
    verts = [int(v) for v in verts]
    offsets = [int(o) for o in offsets]
    m = len(offsets) - 1
    edges = [verts[offsets[i] : offsets[i + 1]] for i in range(m)]
    totals = [0.0] * (t_max + 1)
    comps = [0.0] * (t_max + 1)

    def visit(y, depth):
        v = 0.0
        for yi in y:
            d = yi - xbar
            v += d * d
        totals[depth], comps[depth] = _neumaier(totals[depth], comps[depth], v)
        if depth == t_max:
            return
        for e in edges:
            child = list(y)
            s = child[e[0]]
            for j in range(1, len(e)):
                s += child[e[j]]
            mean = s / len(e)
            for u in e:
                child[u] = mean
            visit(child, depth + 1)

    visit([float(v) for v in x0], 0)
    return np.array([a + b for a, b in zip(totals, comps)])


def jacobi_eigenvalues(a, tol, max_sweeps):
    """Cyclic Jacobi on a copy of ``a``.

    Returns ``(diagonal, residual, sweeps)``; ``sweeps == -1`` signals the
    sweep cap was hit with the max off-diagonal still ``>= tol``.
    """
    A = np.array(a, dtype=np.float64, copy=True)
    n = A.shape[0]
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        off = float(np.max(np.abs(A[iu]))) if n > 1 else 0.0
        if off < tol:
            return np.diag(A).copy(), off, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                g = 100.0 * abs(apq)
                if sweep > 3 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                newp = c * colp - s * colq
                newq = s * colp + c * colq
                A[:, p] = newp
                A[p, :] = newp
                A[:, q] = newq
                A[q, :] = newq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
    return np.diag(A).copy(), off, -1
