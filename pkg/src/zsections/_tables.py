"""Shared read-only lookup tables for term-wise sums.

Every summation engine in the package walks the same families of per-term
constants: ln(k) and 1/sqrt(k) for k = 1, 2, 3, ...  Rebuilding them per call
would dominate the cost of short sums, so this module keeps two module-level
arrays that grow geometrically on demand and are handed out as read-only
views.  Callers must never mutate the returned slices.
"""

from __future__ import annotations

import numpy as np

_log_table = np.log(np.arange(1, 1025, dtype=np.float64))
_rsqrt_table = 1.0 / np.sqrt(np.arange(1, 1025, dtype=np.float64))
_log_table.setflags(write=False)
_rsqrt_table.setflags(write=False)


def _grow(n: int) -> None:
    global _log_table, _rsqrt_table
    size = len(_log_table)
    while size < n:
        size *= 2
    ks = np.arange(1, size + 1, dtype=np.float64)
    _log_table = np.log(ks)
    _rsqrt_table = 1.0 / np.sqrt(ks)
    _log_table.setflags(write=False)
    _rsqrt_table.setflags(write=False)


def log_k(n: int) -> np.ndarray:
    """Read-only array of ln(k) for k = 1..n."""
    if n > len(_log_table):
        _grow(n)
    return _log_table[:n]


def rsqrt_k(n: int) -> np.ndarray:
    """Read-only array of k**-0.5 for k = 1..n."""
    if n > len(_rsqrt_table):
        _grow(n)
    return _rsqrt_table[:n]
