"""SplitMix64 streams.

SplitMix64 (Steele, Lea & Flood 2014; reference C code by S. Vigna) is a
64-bit generator whose whole state is one counter, which makes it trivial
to reproduce bit-for-bit in the compiled kernel, the numpy fallback and
plain Python.

Trial ``k`` of a run seeded with ``seed`` uses the SplitMix64 stream whose
initial state is the ``k``-th output of ``SplitMix64(seed)``. A trial's
edge choices therefore depend only on ``(seed, k)``, never on how trials
are chunked or scheduled.

A uniform index in ``[0, m)`` is taken from the top 32 bits of an output
by multiply-shift: ``((z >> 32) * m) >> 32``. The bias is at most
``m / 2**32``.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
MAX_CHOICES = 1 << 32


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def index(self, m: int) -> int:
        return ((self.next() >> 32) * m) >> 32


def trial_seed(seed: int, k: int) -> int:
    return mix64(seed + (k + 1) * GAMMA)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def trial_seeds(seed: int, start: int, count: int) -> np.ndarray:
    """Stream seeds for trials ``start .. start + count - 1``."""
    with np.errstate(over="ignore"):
        k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        return _mix64_np(np.uint64(seed & MASK64) + k * np.uint64(GAMMA))


def draw_matrix(seeds: np.ndarray, steps: int, m: int) -> np.ndarray:
    """Edge indices, shape ``(len(seeds), steps)``, matching the compiled kernel."""
    if not 1 <= m <= MAX_CHOICES:
        raise ValueError(f"number of choices must be in [1, 2**32], got {m}")
    with np.errstate(over="ignore"):
        j = np.arange(1, steps + 1, dtype=np.uint64) * np.uint64(GAMMA)
        z = _mix64_np(np.asarray(seeds, dtype=np.uint64)[:, None] + j[None, :])
        idx = ((z >> np.uint64(32)) * np.uint64(m)) >> np.uint64(32)
    return idx.astype(np.int64)
