"""Higher-order subadditivity: decisions, transforms, and the largest minorant.

A non-negative function on a grid starting at 0 is subadditive of order ``n``
when ``f(x+y) <= f(x) + r(x, y, n) * f(y)`` for every on-grid pair with
``y > 0``, where ``r(x, y, n) = ((x+y)^n - x^n) / y^n``.  Order 1 is ordinary
subadditivity.  The order hierarchy is nested (order n implies order n+1), so
the minimal passing order can be found by binary search.

The largest subadditive minorant ``sigma`` of ``f`` is the infimum of
``f(u_1) + ... + f(u_m)`` over grid partitions ``u_1 + ... + u_m = x``.  It is
computed here by the min-plus recurrence

    S[k] = min(v[k], min_{1 <= j <= k-1} S[j] + v[k-j])

which reaches exactly the left-nested partial sums of every ordered partition,
so it matches the brute-force enumeration bit for bit.  The gap
``defect = max(f - sigma)`` is the least additive slack for which the
partition inequality holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .grid import GridError, GridFunction, Tolerance, Witness

__all__ = [
    "MinorantResult",
    "PowerFit",
    "SubadditivityReport",
    "check_order",
    "check_order_offset",
    "check_weak_bound",
    "fit_power",
    "functional_equation_residual",
    "minimal_order",
    "nth_root_transform",
    "ratio_coefficient",
    "ratio_transform",
    "subadditive_minorant",
]

MAX_ORDER = 60  # binomial coefficients stay within double-precision range


@dataclass(frozen=True)
class SubadditivityReport:
    """Outcome of an order-``n`` check; ``holds`` iff ``violations`` is empty.

    Witness indices are multiples of the grid step, so on a grid starting at 0
    they coincide with array indices.
    """

    order_tested: int
    holds: bool
    violations: tuple[Witness, ...]
    minimal_order: int | None = None

    def to_dict(self) -> dict:
        return {
            "order": self.order_tested,
            "holds": self.holds,
            "minimal_order": self.minimal_order,
            "violations": [w.to_dict() for w in self.violations],
        }


@dataclass(frozen=True)
class MinorantResult:
    """Largest subadditive minorant ``sigma``, residual ``f - sigma``, and defect."""

    sigma: GridFunction
    residual: GridFunction
    defect: float
    bounded_variation: bool


class PowerFit(NamedTuple):
    """Least-squares power coefficient and worst symmetry residual."""

    c: float
    max_residual: float


def _validate_order(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise GridError(f"order must be an integer in [1, {MAX_ORDER}], got {n!r}")


def ratio_coefficient(x: float, y: float, n: int) -> float:
    """``((x+y)^n - x^n) / y^n`` evaluated stably as a polynomial in ``x/y``.

    The quotient equals ``(u+1)^n - u^n`` with ``u = x/y``, a polynomial with
    binomial coefficients, evaluated by Horner's rule.  This avoids the
    cancellation of the direct form when ``y`` is small.
    """
    _validate_order(n)
    if y <= 0.0:
        raise GridError(f"ratio coefficient requires y > 0, got y={y!r}")
    if x < 0.0:
        raise GridError(f"ratio coefficient requires x >= 0, got x={x!r}")
    u = x / y
    acc = float(math.comb(n, n - 1))
    for i in range(n - 2, -1, -1):
        acc = acc * u + math.comb(n, i)
    return acc


def _coefficient_poly(u: np.ndarray, n: int) -> np.ndarray:
    """Vectorized Horner evaluation of ``(u+1)^n - u^n``; matches the scalar op."""
    acc = np.full_like(u, float(math.comb(n, n - 1)))
    for i in range(n - 2, -1, -1):
        acc = acc * u + float(math.comb(n, i))
    return acc


def _offset_multiple(f: GridFunction) -> int:
    ratio = f.origin / f.step
    m = round(ratio)
    if m < 0 or ratio != m:
        raise GridError(
            f"grid origin {f.origin!r} must be a non-negative integer multiple of "
            f"the step {f.step!r} for subadditivity checks"
        )
    return m

def _require_non_negative(f: GridFunction) -> None:
    bad = np.flatnonzero(f.values < 0.0)
    if bad.size:
        i = int(bad[0])
        raise GridError(f"values must be non-negative, got {f.values[i]!r} at index {i}")


def _pair_grids(f: GridFunction, m: int):
    """Index/abscissa matrices for the pair scan on a grid offset by m steps."""
    size = f.values.size
    mult = np.arange(size) + m  # multiple of the step at each array position
    x = f.origin + np.arange(size) * f.step
    a = mult[:, None]
    b = mult[None, :]
    return mult, x, a, b


def _order_violations(
    f: GridFunction, n: int, tol: Tolerance, m: int, min_first: int
) -> tuple[Witness, ...]:
    v = f.values
    size = v.size
    top = m + size - 1
    mult, x, a, b = _pair_grids(f, m)
    valid = (a >= min_first) & (b >= max(m, 1)) & (a + b <= top)

    xa = x[:, None]
    xb = x[None, :]
    u = np.divide(xa, xb, out=np.zeros((size, size)), where=xb > 0.0)
    coeff = _coefficient_poly(u, n)

    target = np.clip(a + b - m, 0, size - 1)
    lhs = v[target]
    rhs = v[:, None] + coeff * v[None, :]
    margin = tol.abs + tol.rel * np.maximum(np.abs(lhs), np.abs(rhs))
    bad = valid & (lhs > rhs + margin)

    witnesses = []
    for ai, bi in np.argwhere(bad):
        witnesses.append(
            Witness(
                indices=(int(mult[ai]), int(mult[bi])),
                lhs=float(lhs[ai, bi]),
                rhs=float(rhs[ai, bi]),
            )
        )
    return tuple(witnesses)


def check_order(f: GridFunction, n: int, tol: Tolerance | None = None) -> SubadditivityReport:
    """Decide order-``n`` subadditivity on a grid that starts at 0.

    Scans every pair ``i >= 0``, ``j >= 1`` with ``i + j <= N``; pairs with
    ``y = 0`` are skipped.  Violations are reported sorted by ``(i, j)``.
    """
    tol = tol or Tolerance()
    _validate_order(n)
    if f.origin != 0.0:
        raise GridError(
            f"grid must start at 0 for subadditivity checks, got origin {f.origin!r}; "
            "re-sample the function from 0"
        )
    _require_non_negative(f)
    violations = _order_violations(f, n, tol, m=0, min_first=0)
    return SubadditivityReport(order_tested=n, holds=not violations, violations=violations)


def check_order_offset(
    f: GridFunction, n: int, tol: Tolerance | None = None
) -> SubadditivityReport:
    """Order-``n`` check for grids whose origin is a positive multiple of the step.

    Used for ratio-transformed functions, whose domain starts one step in.
    Witness indices are multiples of the step, not array positions.
    """
    tol = tol or Tolerance()
    _validate_order(n)
    m = _offset_multiple(f)
    _require_non_negative(f)
    violations = _order_violations(f, n, tol, m=m, min_first=max(m, 0))
    return SubadditivityReport(order_tested=n, holds=not violations, violations=violations)


def minimal_order(
    f: GridFunction, n_max: int, tol: Tolerance | None = None
) -> SubadditivityReport:
    """Smallest order in ``[1, n_max]`` at which ``f`` passes, if any.

    Order nesting makes ``passes`` monotone in ``n``, so binary search applies;
    the boundary is then reconfirmed with direct scans on both sides in case
    tolerance noise perturbed the search.
    """
    tol = tol or Tolerance()
    _validate_order(n_max)

    cache: dict[int, SubadditivityReport] = {}

    def report_at(k: int) -> SubadditivityReport:
        if k not in cache:
            cache[k] = check_order(f, k, tol)
        return cache[k]

    if not report_at(n_max).holds:
        top = report_at(n_max)
        return replace(top, minimal_order=None)

    lo, hi = 1, n_max
    while lo < hi:
        mid = (lo + hi) // 2
        if report_at(mid).holds:
            hi = mid
        else:
            lo = mid + 1
    m = lo
    while m > 1 and report_at(m - 1).holds:
        m -= 1
    return replace(report_at(m), minimal_order=m)


def nth_root_transform(f: GridFunction, n: int) -> GridFunction:
    """Pointwise n-th root of a non-negative grid function."""
    _validate_order(n)
    _require_non_negative(f)
    if n == 1:
        values = f.values.copy()
    elif n == 2:
        values = np.sqrt(f.values)
    elif n == 3:
        values = np.cbrt(f.values)
    else:
        values = np.power(f.values, 1.0 / n)
    return f.with_values(values)


def ratio_transform(f: GridFunction, n: int) -> GridFunction:
    """Divide by the n-th power of the abscissa; the result starts one step in.

    The value at index 0 has no quotient, so the returned grid has origin equal
    to the step and one fewer sample.
    """
    _validate_order(n)
    if f.origin != 0.0:
        raise GridError(
            f"grid must start at 0 for the ratio transform, got origin {f.origin!r}"
        )
    if f.values.size < 3:
        raise GridError("ratio transform needs at least 3 samples (2 beyond x = 0)")
    x = f.xs()[1:]
    denom = x**n
    if not np.all(np.isfinite(denom)):
        raise GridError(f"abscissa power x^{n} overflows on this grid")
    values = f.values[1:] / denom
    return GridFunction(origin=f.step, step=f.step, values=values)


def check_weak_bound(
    f: GridFunction, n: int, tol: Tolerance | None = None
) -> SubadditivityReport:
    """Check ``f(x+y) <= max(f(x) + q f(y), q f(x) + f(y))`` with ``q = 2^n - 1``.

    This is the coefficient-free relaxation of the order-``n`` inequality;
    both ``x`` and ``y`` must be positive here.
    """
    tol = tol or Tolerance()
    _validate_order(n)
    if f.origin != 0.0:
        raise GridError(
            f"grid must start at 0 for subadditivity checks, got origin {f.origin!r}"
        )
    _require_non_negative(f)

    v = f.values
    size = v.size
    q = float(2**n - 1)
    mult, _, a, b = _pair_grids(f, 0)
    valid = (a >= 1) & (b >= 1) & (a + b <= size - 1)

    target = np.clip(a + b, 0, size - 1)
    lhs = v[target]
    va = v[:, None]
    vb = v[None, :]
    rhs = np.maximum(va + q * vb, q * va + vb)
    margin = tol.abs + tol.rel * np.maximum(np.abs(lhs), np.abs(rhs))
    bad = valid & (lhs > rhs + margin)

    witnesses = tuple(
        Witness(indices=(int(ai), int(bi)), lhs=float(lhs[ai, bi]), rhs=float(rhs[ai, bi]))
        for ai, bi in np.argwhere(bad)
    )
    return SubadditivityReport(order_tested=n, holds=not witnesses, violations=witnesses)


def functional_equation_residual(f: GridFunction, n: int, i: int, j: int) -> float:
    """Absolute gap between the two sides of the order-``n`` symmetry equation.

    The equation ``f(x) + r(x,y,n) f(y) = f(y) + r(y,x,n) f(x)`` holds for all
    positive pairs exactly when ``f`` is a multiple of ``x^n`` (for n >= 2).
    """
    if not isinstance(n, int) or n < 2:
        raise GridError(f"the symmetry equation needs integer n >= 2, got {n!r}")
    _validate_order(n)
    if f.origin != 0.0:
        raise GridError(f"grid must start at 0, got origin {f.origin!r}")
    size = f.values.size
    if i < 1 or j < 1:
        raise GridError(f"both indices must be >= 1 (x, y > 0), got i={i}, j={j}")
    if i + j > size - 1:
        raise GridError(f"i + j = {i + j} exceeds the grid (N = {size - 1})")
    xi, xj = f.x(i), f.x(j)
    vi, vj = float(f.values[i]), float(f.values[j])
    lhs = vi + ratio_coefficient(xi, xj, n) * vj
    rhs = vj + ratio_coefficient(xj, xi, n) * vi
    return abs(lhs - rhs)


def fit_power(f: GridFunction, n: int) -> PowerFit:
    """Least-squares fit ``v[i] ~ c * x_i^n`` plus the worst symmetry residual.

    ``max_residual`` vanishes (up to roundoff scaled by ``max|v|``) exactly on
    the ``c * x^n`` family, so it measures distance from that solution set.
    """
    if not isinstance(n, int) or n < 2:
        raise GridError(f"power fit needs integer n >= 2, got {n!r}")
    _validate_order(n)
    if f.origin != 0.0:
        raise GridError(f"grid must start at 0, got origin {f.origin!r}")
    v = f.values
    size = v.size
    if size < 3:
        raise GridError("power fit needs at least 3 samples (2 beyond x = 0)")

    x = f.xs()
    xn = x[1:] ** n
    if not np.all(np.isfinite(xn)):
        raise GridError(f"abscissa power x^{n} overflows on this grid")
    c = float(np.dot(v[1:], xn) / np.dot(xn, xn))

    mult, xx, a, b = _pair_grids(f, 0)
    valid = (a >= 1) & (b >= 1) & (a + b <= size - 1)
    xa = xx[:, None]
    xb = xx[None, :]
    ones = np.ones((size, size))
    u_ab = np.divide(xa, xb, out=ones.copy(), where=xb > 0.0)
    u_ba = np.divide(xb, xa, out=ones, where=xa > 0.0)
    lhs = v[:, None] + _coefficient_poly(u_ab, n) * v[None, :]
    rhs = v[None, :] + _coefficient_poly(u_ba, n) * v[:, None]
    gaps = np.where(valid, np.abs(lhs - rhs), 0.0)
    return PowerFit(c, float(np.max(gaps)))


def subadditive_minorant(f: GridFunction, tol: Tolerance | None = None) -> MinorantResult:
    """Largest subadditive minorant of ``f`` via the min-plus recurrence.

    ``sigma[k]`` is the exact minimum over all grid partitions of ``x_k`` into
    parts of index >= 1 of the summed values (left-nested addition), so
    ``sigma <= f`` and ``residual = f - sigma >= 0`` hold without tolerance.
    ``bounded_variation`` records whether the input was non-decreasing, in
    which case the residual is a difference of two monotone functions.
    """
    tol = tol or Tolerance()
    if f.origin != 0.0:
        raise GridError(
            f"grid must start at 0 for the subadditive minorant, got origin {f.origin!r}"
        )
    _require_non_negative(f)

    v = f.values
    sigma = v.copy()
    for k in range(2, v.size):
        best = float(np.min(sigma[1:k] + v[k - 1:0:-1]))
        if best < sigma[k]:
            sigma[k] = best

    residual = v - sigma
    defect = float(np.max(residual))
    non_decreasing = bool(
        np.all(v[:-1] <= v[1:] + tol.abs + tol.rel * np.maximum(np.abs(v[:-1]), np.abs(v[1:])))
    )
    return MinorantResult(
        sigma=f.with_values(sigma),
        residual=f.with_values(residual),
        defect=defect,
        bounded_variation=non_decreasing,
    )
