"""Shared deterministic generators for the test suite.

Everything takes an explicit numpy Generator so the suites stay reproducible;
functions built here satisfy their advertised property in exact arithmetic,
which keeps tolerance headroom for the float checks.
"""

from __future__ import annotations

import numpy as np

import funclass as fc


def random_nonneg_grid(rng: np.random.Generator, max_n: int = 64, scale: float = 1.0):
    """A random non-negative grid starting at 0; mixes rough and smooth shapes."""
    n = int(rng.integers(2, max_n + 1))
    step = float(rng.choice([0.25, 0.5, 1.0]))
    kind = rng.integers(0, 4)
    x = np.arange(n + 1) * step
    if kind == 0:
        vals = rng.uniform(0.0, scale, n + 1)
    elif kind == 1:
        vals = rng.uniform(0.2, 1.0, n + 1) * scale  # bounded away from 0
    elif kind == 2:
        p = rng.uniform(0.3, 3.0)
        vals = rng.uniform(0.1, scale) * x**p
    else:
        vals = np.abs(np.cumsum(rng.normal(0.0, 0.3 * scale, n + 1)))
    return fc.GridFunction(0.0, step, vals)


def random_order_subadditive(
    rng: np.random.Generator, n_cap: int = 6, shape: tuple[int, float] | None = None
):
    """A grid function that is order-n subadditive for some n <= n_cap, exactly.

    Built from the closure properties of the class: scaled powers x^p with
    ceil(p) <= n_cap, sums and pointwise suprema of those, and min-plus
    minorants (order 1).  Steps stay >= 0.25 and coefficients small so the
    ratio transform keeps values at a scale where roundoff is far below 1e-9.
    ``shape`` forces a particular (intervals, step) grid.
    """
    if shape is None:
        n = int(rng.integers(3, 25))
        step = float(rng.choice([0.25, 0.5, 1.0]))
    else:
        n, step = shape
    x = np.arange(n + 1) * step

    def power_vals() -> np.ndarray:
        p = float(rng.uniform(0.2, float(n_cap)))
        c = float(rng.uniform(0.1, 3.0))
        return c * x**p

    kind = rng.integers(0, 4)
    if kind == 0:
        vals = power_vals()
    elif kind == 1:
        vals = power_vals() + power_vals()
    elif kind == 2:
        vals = np.maximum(power_vals(), power_vals())
    else:
        rough = fc.GridFunction(0.0, step, rng.uniform(0.0, 3.0, n + 1))
        vals = fc.subadditive_minorant(rough).sigma.values
    return fc.GridFunction(0.0, step, vals)


def random_increasing_grid(rng: np.random.Generator, max_n: int = 128):
    """Strictly increasing grid, so every full window has positive height."""
    n = int(rng.integers(4, max_n + 1))
    step = float(rng.choice([0.1, 0.25, 0.5]))
    vals = np.cumsum(rng.uniform(0.05, 1.0, n + 1))
    return fc.GridFunction(0.0, step, vals)


def random_periodic_increasing_pair(rng: np.random.Generator, max_n: int = 128):
    """(f, spec, g, k) with f = g + k satisfying the bounded-perturbation hypothesis.

    g is strictly increasing and k is rescaled so its oscillation stays a
    strict fraction of the smallest full-window rise of g; f is then
    d-periodically increasing with real slack, not just within tolerance.
    """
    g = random_increasing_grid(rng, max_n)
    w = int(rng.integers(1, g.n + 1))
    spec = fc.PeriodSpec(d=w * g.step, w=w)
    full = fc.heights(g, spec).window_heights[: g.values.size - w]
    min_window = float(np.min(full))
    raw = rng.uniform(-1.0, 1.0, g.values.size)
    osc = float(np.max(raw) - np.min(raw))
    factor = float(rng.uniform(0.2, 0.95))
    k_vals = raw * (min_window * factor / osc) if osc > 0 else raw * 0.0
    k = g.with_values(k_vals)
    return g + k, spec, g, k


def random_grid_any_sign(rng: np.random.Generator, max_n: int = 256):
    n = int(rng.integers(2, max_n + 1))
    step = float(rng.choice([0.1, 0.25, 1.0]))
    vals = rng.uniform(-2.0, 2.0, n + 1)
    return fc.GridFunction(0.0, step, vals)
