"""Levenshtein edit distance with two interchangeable numeric backends.

The dynamic-programming loop is the one hot numeric kernel in the whole
pipeline (fuzzy thesaurus matching scans every term), so it is implemented
twice: a numba ``@njit`` kernel and a vectorized pure-numpy kernel. The
``CASEGRAPH_DISTANCE_BACKEND`` environment variable picks one (``numba`` or
``numpy``); unset, numba is used when importable and numpy otherwise. Both
kernels compute the plain edit distance (unit costs, no transpositions).

``benchmarks/bench_distance.py`` compares the two.
"""

from __future__ import annotations

import logging
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - depends on the environment
    njit = None

log = logging.getLogger(__name__)

BACKEND_ENV_VAR = "CASEGRAPH_DISTANCE_BACKEND"
BACKENDS = ("numba", "numpy")

_backend: str | None = None


def _resolve_backend() -> str:
    requested = os.environ.get(BACKEND_ENV_VAR, "").strip().lower()
    if requested and requested not in BACKENDS:
        raise ValueError(
            f"{BACKEND_ENV_VAR}={requested!r}: expected one of {', '.join(BACKENDS)}"
        )
    if requested == "numba" and njit is None:
        log.warning("%s=numba but numba is not importable; using numpy", BACKEND_ENV_VAR)
        return "numpy"
    if requested:
        return requested
    return "numba" if njit is not None else "numpy"


def active_backend() -> str:
    """Name of the kernel in use: 'numba' or 'numpy'."""
    global _backend
    if _backend is None:
        _backend = _resolve_backend()
    return _backend


def _codes(s: str) -> np.ndarray:
    return np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32)


# ---------------------------------------------------------------------------
# kernels

def _kernel_numpy(a: np.ndarray, b: np.ndarray) -> int:
    """Row-at-a-time DP; the within-row dependency is a prefix minimum.

    cur[j] = min(cand[j], cur[j-1] + 1) unrolls to
    cur[j] = min over k <= j of cand[k] + (j - k), which is
    minimum.accumulate(cand - offsets) + offsets.
    """
    n = b.size
    offsets = np.arange(n + 1)
    prev = offsets.copy()
    cand = np.empty(n + 1, dtype=np.int64)
    for i in range(a.size):
        cand[0] = i + 1
        np.minimum(prev[1:] + 1, prev[:-1] + (b != a[i]), out=cand[1:])
        prev = np.minimum.accumulate(cand - offsets) + offsets
        cand = np.empty(n + 1, dtype=np.int64)
    return int(prev[n])


if njit is not None:

    @njit(cache=True)
    def _kernel_numba(a, b):  # pragma: no cover - measured via dispatch tests
        n = b.size
        prev = np.arange(n + 1)
        cur = np.empty(n + 1, dtype=np.int64)
        for i in range(a.size):
            cur[0] = i + 1
            for j in range(1, n + 1):
                cost = 0 if a[i] == b[j - 1] else 1
                best = prev[j - 1] + cost
                if prev[j] + 1 < best:
                    best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                cur[j] = best
            prev, cur = cur, prev
        return prev[n]

else:
    _kernel_numba = None


# ---------------------------------------------------------------------------
# public API

def levenshtein(a: str, b: str) -> int:
    """Edit distance between two strings under the selected backend."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    codes_a, codes_b = _codes(a), _codes(b)
    if active_backend() == "numba":
        return int(_kernel_numba(codes_a, codes_b))
    return _kernel_numpy(codes_a, codes_b)
