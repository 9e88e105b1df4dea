"""Star-convexity of sampled functions and of regions built from their graphs.

A grid point ``p`` is a center when, for every other grid point ``q``, the
straight segment from ``(x_p, v[p])`` to ``(x_q, v[q])`` stays on one side of
the graph: entirely on or above it (inside the epigraph) or entirely on or
below it (inside the hypograph), checked at every grid abscissa in between.
The set of all centers is the central set; it is non-empty exactly when the
function is star-convex, and it is the whole grid for convex or concave input.

``classify_shape`` reads the one-sided curvature at a split point from second
differences; the four two-sided sign patterns correspond to epigraph or
hypograph regions (or split unions of both) that are star-shaped from the
graph point, which ``region_star_check`` verifies by sampling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .grid import GridError, GridFunction, Tolerance

__all__ = [
    "RegionCheckReport",
    "RegionKind",
    "RegionSpec",
    "ShapeClass",
    "StarReport",
    "StarWitness",
    "central_set",
    "classify_shape",
    "is_center",
    "region_star_check",
]

DEFAULT_MAX_SCAN = 512  # N cap for the cubic central-set scan


class ShapeClass(str, enum.Enum):
    """Curvature pattern (left side, right side) around a split point.

    Linear stretches are both convex and concave; ties resolve in declaration
    order, so an affine function classifies as convex-convex.
    """

    CONVEX_CONVEX = "conv-conv"
    CONCAVE_CONCAVE = "conc-conc"
    CONVEX_CONCAVE = "conv-conc"
    CONCAVE_CONVEX = "conc-conv"
    MIXED = "mixed"


class RegionKind(str, enum.Enum):
    EPI = "epi"
    HYPO = "hypo"
    SPLIT_EPI_HYPO = "split-epi-hypo"  # epigraph left of the split, hypograph right
    SPLIT_HYPO_EPI = "split-hypo-epi"  # hypograph left of the split, epigraph right


@dataclass(frozen=True)
class RegionSpec:
    """A planar region derived from the graph, bounded vertically for sampling.

    ``vertical_extent`` pads the sampled value range above and below;
    ``vertical_samples`` levels are placed across that padded range.  Split
    kinds need ``split_index``; the split column belongs to both sides.
    """

    kind: RegionKind
    split_index: int | None = None
    vertical_extent: float = 1.0
    vertical_samples: int = 64

    def __post_init__(self) -> None:
        if self.kind in (RegionKind.SPLIT_EPI_HYPO, RegionKind.SPLIT_HYPO_EPI):
            if self.split_index is None:
                raise GridError(f"region kind {self.kind.value!r} requires split_index")
        if not self.vertical_extent > 0.0:
            raise GridError(f"vertical_extent must be > 0, got {self.vertical_extent!r}")
        if self.vertical_samples < 2:
            raise GridError(f"vertical_samples must be >= 2, got {self.vertical_samples!r}")


@dataclass(frozen=True)
class StarWitness:
    """A sampled region point whose segment to the center leaves the region."""

    column: int  # grid index of the sampled point
    level: float  # its ordinate
    crossing: int  # grid index where the segment exits
    segment_value: float  # segment ordinate at the crossing
    graph_value: float  # function value at the crossing

    def to_dict(self) -> dict:
        return {
            "q": self.column,
            "level": self.level,
            "m": self.crossing,
            "segment": self.segment_value,
            "f": self.graph_value,
        }


@dataclass(frozen=True)
class RegionCheckReport:
    ok: bool
    witness: StarWitness | None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class StarReport:
    centers: tuple[int, ...]
    per_center_class: dict[int, ShapeClass]
    is_star_convex: bool

    def to_dict(self) -> dict:
        return {
            "centers": list(self.centers),
            "classes": {str(p): cls.value for p, cls in self.per_center_class.items()},
            "is_star_convex": self.is_star_convex,
        }


def _margin(f: GridFunction, tol: Tolerance) -> float:
    return tol.abs + tol.rel * float(np.max(np.abs(f.values)))


def is_center(f: GridFunction, p: int, tol: Tolerance | None = None) -> bool:
    """Is ``(x_p, v[p])`` a center: every chord one-sided against the graph?

    Chords are evaluated only at grid abscissas strictly between the endpoints,
    with a one-sided slack of ``tol.abs + tol.rel * max|v|``.
    """
    tol = tol or Tolerance()
    v = f.values
    if not 0 <= p < v.size:
        raise GridError(f"center index {p} out of range [0, {v.size - 1}]")
    margin = _margin(f, tol)
    for q in range(v.size):
        lo, hi = (p, q) if p < q else (q, p)
        if hi - lo < 2:
            continue
        between = np.arange(lo + 1, hi)
        t = (between - p) / (q - p)
        chord = v[p] + (v[q] - v[p]) * t
        seg = v[between]
        in_epi = bool(np.all(chord >= seg - margin))
        in_hypo = bool(np.all(chord <= seg + margin))
        if not (in_epi or in_hypo):
            return False
    return True


def central_set(
    f: GridFunction, tol: Tolerance | None = None, max_scan: int = DEFAULT_MAX_SCAN
) -> StarReport:
    """All centers with their curvature classes (cubic scan in the grid size)."""
    tol = tol or Tolerance()
    if f.n > max_scan:
        raise GridError(
            f"grid has {f.n} intervals, above the scan cap {max_scan}; "
            "raise max_scan to force the cubic scan"
        )
    centers = tuple(p for p in range(f.values.size) if is_center(f, p, tol))
    classes = {p: classify_shape(f, p, tol) for p in centers}
    return StarReport(
        centers=centers, per_center_class=classes, is_star_convex=bool(centers)
    )


def classify_shape(f: GridFunction, p: int, tol: Tolerance | None = None) -> ShapeClass:
    """Second-difference curvature pattern of the two sides around index ``p``.

    A side with fewer than three points constrains nothing, so it counts as
    both convex and concave and the other side decides alone.
    """
    tol = tol or Tolerance()
    v = f.values
    if not 0 <= p < v.size:
        raise GridError(f"split index {p} out of range [0, {v.size - 1}]")
    margin = _margin(f, tol)
    d2 = v[2:] - 2.0 * v[1:-1] + v[:-2]  # second difference at interior index i+1
    left = d2[: max(p - 1, 0)]  # interior indices 1 .. p-1
    right = d2[p:]  # interior indices p+1 .. N-1

    def convex(side: np.ndarray) -> bool:
        return bool(np.all(side >= -margin))

    def concave(side: np.ndarray) -> bool:
        return bool(np.all(side <= margin))

    if convex(left) and convex(right):
        return ShapeClass.CONVEX_CONVEX
    if concave(left) and concave(right):
        return ShapeClass.CONCAVE_CONCAVE
    if convex(left) and concave(right):
        return ShapeClass.CONVEX_CONCAVE
    if concave(left) and convex(right):
        return ShapeClass.CONCAVE_CONVEX
    return ShapeClass.MIXED


def _column_kinds(region: RegionSpec, size: int) -> np.ndarray:
    """Per-column membership rule: +1 epigraph, -1 hypograph, 0 unconstrained."""
    kinds = np.empty(size, dtype=np.int8)
    if region.kind is RegionKind.EPI:
        kinds[:] = 1
    elif region.kind is RegionKind.HYPO:
        kinds[:] = -1
    else:
        s = region.split_index
        assert s is not None
        left, right = (1, -1) if region.kind is RegionKind.SPLIT_EPI_HYPO else (-1, 1)
        kinds[:s] = left
        kinds[s + 1:] = right
        kinds[s] = 0  # the split column lies in both sides, so any ordinate is inside
    return kinds


def region_star_check(
    f: GridFunction,
    region: RegionSpec,
    center_p: int,
    tol: Tolerance | None = None,
) -> RegionCheckReport:
    """Sampled test that the region is star-shaped from ``(x_p, v[p])``.

    Points on ``vertical_samples`` levels are taken over every grid column that
    lies inside the region; each is joined to the center and the segment's
    ordinate is checked against the membership rule at every grid column it
    crosses.  The first failing sample (column, then level, then crossing) is
    returned as witness.
    """
    tol = tol or Tolerance()
    v = f.values
    size = v.size
    if not 0 <= center_p < size:
        raise GridError(f"center index {center_p} out of range [0, {size - 1}]")
    if region.kind in (RegionKind.SPLIT_EPI_HYPO, RegionKind.SPLIT_HYPO_EPI):
        if region.split_index != center_p:
            raise GridError(
                f"split_index {region.split_index} must equal the center {center_p}"
            )
    if region.split_index is not None and not 0 <= region.split_index < size:
        raise GridError(f"split index {region.split_index} out of range")

    margin = _margin(f, tol)
    kinds = _column_kinds(region, size)
    levels = np.linspace(
        float(np.min(v)) - region.vertical_extent,
        float(np.max(v)) + region.vertical_extent,
        region.vertical_samples,
    )
    cp = float(v[center_p])

    for q in range(size):
        if kinds[q] == 1:
            selected = levels[levels >= v[q]]
        elif kinds[q] == -1:
            selected = levels[levels <= v[q]]
        else:
            selected = levels
        lo, hi = (center_p, q) if center_p < q else (q, center_p)
        if hi - lo < 2 or selected.size == 0:
            continue
        between = np.arange(lo + 1, hi)
        frac = (between - center_p) / (q - center_p)
        seg = cp + np.outer(selected - cp, frac)  # levels x crossings
        col_kinds = kinds[between]
        ok = np.where(
            col_kinds == 1,
            seg >= v[between] - margin,
            np.where(col_kinds == -1, seg <= v[between] + margin, True),
        )
        bad = np.argwhere(~ok)
        if bad.size:
            li, mi = bad[0]
            m_idx = int(between[mi])
            return RegionCheckReport(
                ok=False,
                witness=StarWitness(
                    column=q,
                    level=float(selected[li]),
                    crossing=m_idx,
                    segment_value=float(seg[li, mi]),
                    graph_value=float(v[m_idx]),
                ),
            )
    return RegionCheckReport(ok=True, witness=None)
