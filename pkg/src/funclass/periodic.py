"""Distance-gated monotonicity: a function increases by a period ``d`` when
``f(x) <= f(y)`` for every pair with ``y - x >= d``.

The grid realization requires ``d`` to be an exact whole number ``w`` of steps.
The fast decision compares each value against the minimum of the suffix that
starts ``w`` steps later, which is equivalent to the all-pairs definition
because the acceptance rule is monotone in the right-hand side.

Heights measure oscillation: ``window_heights[i]`` is max minus min of the
values over ``[i, i+w]`` clipped to the grid, ``global_d`` is the largest
window height, and ``overall`` the full-range oscillation.  The monotone
envelopes (suffix minima and prefix maxima) bracket any ``d``-periodically
increasing function within ``global_d / 2`` of their average.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .grid import GridError, GridFunction, Tolerance, Witness

__all__ = [
    "EnvelopeSet",
    "HatBoundReport",
    "HeightProfile",
    "PeriodSpec",
    "PeriodicCheckResult",
    "PeriodicDecomposition",
    "PerturbationReport",
    "check_hat_bound",
    "decompose",
    "envelopes",
    "greatest_periodic_minorant",
    "heights",
    "is_periodically_increasing",
    "perturbation_check",
]


@dataclass(frozen=True)
class PeriodSpec:
    """A period ``d`` that is exactly ``w`` grid steps, with ``1 <= w <= N``."""

    d: float
    w: int

    @classmethod
    def for_grid(
        cls, f: GridFunction, d: float, tol: Tolerance | None = None
    ) -> "PeriodSpec":
        """Validate ``d`` against the grid and snap it to ``w * step``.

        ``d`` must be within tolerance of a whole number of steps and fit
        inside the sampled interval; otherwise the nearest representable
        period is suggested.
        """
        tol = tol or Tolerance()
        if not d > 0.0:
            raise GridError(f"period must be positive, got {d!r}")
        w = round(d / f.step)
        snapped = w * f.step
        if w < 1 or not tol.eq(snapped, d):
            below = max(w, 1) * f.step
            above = (max(w, 1) + 1) * f.step
            nearest = below if abs(below - d) <= abs(above - d) else above
            raise GridError(
                f"period {d!r} is not a whole number of grid steps "
                f"(step {f.step!r}); nearest valid d is {nearest!r}"
            )
        if w > f.n:
            raise GridError(
                f"period {d!r} spans {w} steps but the grid has only {f.n} intervals"
            )
        return cls(d=snapped, w=w)


class PeriodicCheckResult(NamedTuple):
    holds: bool
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class HeightProfile:
    """Oscillation of the values over sliding windows of ``w`` steps.

    ``window_heights[i]`` covers indices ``[i, i+w]`` clipped to the grid
    (windows near the right edge shrink); ``global_d`` is their maximum and
    ``overall`` the oscillation over the whole grid.
    """

    window_heights: np.ndarray
    global_d: float
    overall: float


class EnvelopeSet(NamedTuple):
    f_lower: GridFunction
    f_upper: GridFunction
    f_hat: GridFunction


class HatBoundReport(NamedTuple):
    bound: float
    sup_err: float
    holds: bool


@dataclass(frozen=True)
class PerturbationReport:
    """Verdicts for perturbing an increasing ``g`` by a bounded ``k``.

    When every full window of ``g`` rises at least as much as ``k`` oscillates,
    both ``g + k`` and ``g - k`` must pass the periodic check; otherwise no
    claim is made and the verdict fields stay ``None``.
    """

    hypothesis_holds: bool
    min_window_height: float
    k_height: float
    plus: PeriodicCheckResult | None
    minus: PeriodicCheckResult | None


@dataclass(frozen=True)
class PeriodicDecomposition:
    """Split ``f = g + h`` with ``g`` non-decreasing and ``h`` ``d``-periodic.

    ``l`` is the common step ``f(x + d) - f(x)``; ``periodicity_error`` is the
    worst observed gap ``|h[i+w] - h[i]|``.
    """

    g: GridFunction
    h: GridFunction
    l: float
    periodicity_error: float


def _suffix_min_with_argmin(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Suffix minima and the smallest index attaining each one."""
    size = v.size
    mins = np.empty(size)
    args = np.empty(size, dtype=np.int64)
    best = v[-1]
    best_at = size - 1
    for t in range(size - 1, -1, -1):
        if v[t] <= best:
            best = v[t]
            best_at = t
        mins[t] = best
        args[t] = best_at
    return mins, args


def is_periodically_increasing(
    f: GridFunction, p: PeriodSpec, tol: Tolerance | None = None
) -> PeriodicCheckResult:
    """Decide whether ``f(x) <= f(y)`` whenever ``y - x >= d`` on the grid.

    Each index is compared against the minimum over all indices at least ``w``
    steps later; a failure is witnessed by the pair ``(i, argmin)``.
    """
    tol = tol or Tolerance()
    _require_period(f, p)
    v = f.values
    mins, args = _suffix_min_with_argmin(v)
    witnesses = []
    for i in range(v.size - p.w):
        lo = mins[i + p.w]
        if not tol.leq(float(v[i]), float(lo)):
            witnesses.append(
                Witness(indices=(i, int(args[i + p.w])), lhs=float(v[i]), rhs=float(lo))
            )
    return PeriodicCheckResult(holds=not witnesses, witnesses=tuple(witnesses))


def _require_period(f: GridFunction, p: PeriodSpec) -> None:
    if p.w < 1 or p.w > f.n:
        raise GridError(f"period of {p.w} steps does not fit a grid with {f.n} intervals")


def heights(f: GridFunction, p: PeriodSpec) -> HeightProfile:
    """Sliding-window oscillation via monotonic deques, O(N) overall."""
    _require_period(f, p)
    v = f.values
    size = v.size
    out = np.empty(size)
    maxdq: deque[int] = deque()
    mindq: deque[int] = deque()
    right = -1
    for i in range(size):
        hi = min(i + p.w, size - 1)
        while right < hi:
            right += 1
            while maxdq and v[maxdq[-1]] <= v[right]:
                maxdq.pop()
            maxdq.append(right)
            while mindq and v[mindq[-1]] >= v[right]:
                mindq.pop()
            mindq.append(right)
        while maxdq[0] < i:
            maxdq.popleft()
        while mindq[0] < i:
            mindq.popleft()
        out[i] = v[maxdq[0]] - v[mindq[0]]
    return HeightProfile(
        window_heights=out,
        global_d=float(np.max(out)),
        overall=float(np.max(v) - np.min(v)),
    )


def greatest_periodic_minorant(f: GridFunction, p: PeriodSpec) -> GridFunction:
    """Largest ``d``-periodically increasing function below ``f``.

    Cap each value by the minimum of everything at least ``w`` steps to the
    right; where no such point exists the value is kept.
    """
    _require_period(f, p)
    v = f.values
    mins, _ = _suffix_min_with_argmin(v)
    out = v.copy()
    cut = v.size - p.w
    out[:cut] = np.minimum(v[:cut], mins[p.w:])
    return f.with_values(out)


def envelopes(f: GridFunction) -> EnvelopeSet:
    """Largest increasing minorant, smallest increasing majorant, and their mean."""
    v = f.values
    lower = np.minimum.accumulate(v[::-1])[::-1]
    upper = np.maximum.accumulate(v)
    hat = (lower + upper) / 2.0
    return EnvelopeSet(
        f_lower=f.with_values(lower),
        f_upper=f.with_values(upper),
        f_hat=f.with_values(hat),
    )


def check_hat_bound(
    f: GridFunction, p: PeriodSpec, tol: Tolerance | None = None
) -> HatBoundReport:
    """Verify ``sup |f - f_hat| <= global_d / 2`` for a periodically increasing f."""
    tol = tol or Tolerance()
    verdict = is_periodically_increasing(f, p, tol)
    if not verdict.holds:
        w = verdict.witnesses[0]
        raise GridError(
            f"function is not {p.d!r}-periodically increasing "
            f"(f({f.x(w.indices[0])!r}) = {w.lhs!r} > f({f.x(w.indices[1])!r}) = {w.rhs!r})"
        )
    bound = heights(f, p).global_d / 2.0
    hat = envelopes(f).f_hat
    sup_err = float(np.max(np.abs(f.values - hat.values)))
    return HatBoundReport(bound=bound, sup_err=sup_err, holds=tol.leq(sup_err, bound))


def perturbation_check(
    g: GridFunction, k: GridFunction, p: PeriodSpec, tol: Tolerance | None = None
) -> PerturbationReport:
    """Check that ``g + k`` and ``g - k`` stay periodically increasing.

    Requires ``g`` non-decreasing on the same grid as ``k``.  The hypothesis
    compares the smallest full-window rise of ``g`` against the oscillation of
    ``k``; if it fails, the perturbed functions are not judged.
    """
    tol = tol or Tolerance()
    g._require_same_grid(k)
    _require_period(g, p)
    v = g.values
    margins = tol.abs + tol.rel * np.maximum(np.abs(v[:-1]), np.abs(v[1:]))
    if not np.all(v[:-1] <= v[1:] + margins):
        i = int(np.flatnonzero(v[:-1] > v[1:] + margins)[0])
        raise GridError(f"g must be non-decreasing, but g[{i}] > g[{i + 1}]")

    full = heights(g, p).window_heights[: v.size - p.w]
    min_window = float(np.min(full))
    k_height = float(np.max(k.values) - np.min(k.values))
    hypothesis = tol.geq(min_window, k_height)
    if not hypothesis:
        return PerturbationReport(False, min_window, k_height, plus=None, minus=None)
    return PerturbationReport(
        hypothesis_holds=True,
        min_window_height=min_window,
        k_height=k_height,
        plus=is_periodically_increasing(g + k, p, tol),
        minus=is_periodically_increasing(g - k, p, tol),
    )


def decompose(
    f: GridFunction, p: PeriodSpec, tol: Tolerance | None = None
) -> PeriodicDecomposition:
    """Split a periodically increasing ``f`` with constant step into ``g + h``.

    Requires the sampled interval to be longer than ``2d`` and the shift
    differences ``f(x + d) - f(x)`` to be constant (checked with a margin ten
    times looser than the base tolerance, since this is a hypothesis on data).
    ``g`` is the largest increasing minorant; ``h = f - g`` is ``d``-periodic.
    """
    tol = tol or Tolerance()
    _require_period(f, p)
    if f.n <= 2 * p.w:
        raise GridError(
            f"interval of {f.n} steps is not longer than twice the period ({2 * p.w} steps)"
        )
    verdict = is_periodically_increasing(f, p, tol)
    if not verdict.holds:
        w = verdict.witnesses[0]
        raise GridError(
            f"function is not {p.d!r}-periodically increasing "
            f"(f({f.x(w.indices[0])!r}) = {w.lhs!r} > f({f.x(w.indices[1])!r}) = {w.rhs!r})"
        )

    v = f.values
    diffs = v[p.w:] - v[: v.size - p.w]
    hi = int(np.argmax(diffs))
    lo = int(np.argmin(diffs))
    allowed = 10.0 * tol.abs + tol.rel * float(np.max(np.abs(v)))
    if diffs[hi] - diffs[lo] > allowed:
        raise GridError(
            f"shift difference is not constant: f(x+d) - f(x) is {float(diffs[hi])!r} "
            f"at index {hi} but {float(diffs[lo])!r} at index {lo}"
        )
    step_l = float(np.mean(diffs))

    g = envelopes(f).f_lower
    h = f - g
    hv = h.values
    per_err = float(np.max(np.abs(hv[p.w:] - hv[: hv.size - p.w])))
    return PeriodicDecomposition(g=g, h=h, l=step_l, periodicity_error=per_err)
