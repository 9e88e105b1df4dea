"""Brute-force ground truth for tests: slow, obvious, production code never calls it.

``minorant_bruteforce`` enumerates every ordered partition of an index into
positive parts and folds the values left to right, which is exactly the set of
sums the min-plus recurrence minimizes over, so the two agree bit for bit.
The size cap keeps the exponential enumeration honest.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence

import numpy as np

from .grid import GridError, GridFunction, Tolerance, sample
from .periodic import PeriodSpec
from .starconvex import is_center

__all__ = [
    "center_check_hires",
    "minorant_bruteforce",
    "periodic_check_bruteforce",
]

MAX_BRUTEFORCE_N = 14


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def minorant_bruteforce(f: GridFunction, k: int) -> float:
    """Exact minimum of the summed values over all partitions of index ``k``."""
    if f.origin != 0.0:
        raise GridError(f"grid must start at 0, got origin {f.origin!r}")
    if f.n > MAX_BRUTEFORCE_N:
        raise GridError(
            f"brute-force enumeration is capped at N <= {MAX_BRUTEFORCE_N}, grid has N = {f.n}"
        )
    if not 0 <= k <= f.n:
        raise GridError(f"index {k} out of range [0, {f.n}]")
    v = f.values
    if k == 0:
        return float(v[0])
    return float(min(sum(v[part] for part in comp) for comp in _compositions(k)))


def periodic_check_bruteforce(
    f: GridFunction, p: PeriodSpec, tol: Tolerance | None = None
) -> bool:
    """All-pairs transcription of the definition: ``v[i] <= v[t]`` when ``t - i >= w``."""
    tol = tol or Tolerance()
    v = f.values
    i = np.arange(v.size)[:, None]
    t = np.arange(v.size)[None, :]
    applies = t - i >= p.w
    lhs = v[:, None]
    rhs = v[None, :]
    margin = tol.abs + tol.rel * np.maximum(np.abs(lhs), np.abs(rhs))
    return bool(np.all(~applies | (lhs <= rhs + margin)))


def center_check_hires(
    source: str | Callable[[float], float] | Sequence[float],
    f: GridFunction,
    p: int,
    factor: int = 4,
    tol: Tolerance | None = None,
) -> bool:
    """Re-run the center test on a ``factor`` times denser resampling of ``source``.

    The source must be an expression or callable (a denser grid cannot be read
    off stored samples); the coarse abscissas land exactly on the fine grid.
    """
    if factor < 2:
        raise GridError(f"resampling factor must be >= 2, got {factor}")
    fine = sample(source, f.origin, f.step / factor, f.n * factor + 1)
    return is_center(fine, p * factor, tol)
