"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines on the terminal.  Tolerances and trial counts are pinned here, not
configurable.
"""

import json
import math

import numpy as np
import pytest

import funclass as fc
from funclass.cli import run
from funclass.oracle import minorant_bruteforce, periodic_check_bruteforce
from funclass.starconvex import RegionKind, RegionSpec, ShapeClass
from support import (
    random_grid_any_sign,
    random_nonneg_grid,
    random_order_subadditive,
    random_periodic_increasing_pair,
)

PI = math.pi


def _report(criterion: str, failures: list) -> None:
    status = "PASS" if not failures else f"FAIL ({len(failures)} violations)"
    print(f"criterion {criterion}: {status}")
    assert not failures, failures[:5]


def test_criterion_01_order_monotonicity():
    rng = np.random.default_rng(1001)
    failures = []
    exercised = 0
    for trial in range(1000):
        f = random_nonneg_grid(rng, max_n=64)
        smallest = next((n for n in range(1, 9) if fc.check_order(f, n).holds), None)
        if smallest is None:
            continue
        exercised += 1
        for m in range(smallest + 1, 13):
            if not fc.check_order(f, m).holds:
                failures.append((trial, smallest, m))
    assert exercised > 100  # the sample must actually exercise the implication
    _report("1 (order monotonicity, 1000 grids)", failures)


def test_criterion_02_power_rule():
    failures = []
    for p in (0.5, 1, 1.7, 2, 2.5, 3, 3.3):
        f = fc.sample(lambda t, p=p: t**p, 0, 1 / 64, 65)
        got = fc.minimal_order(f, 8).minimal_order
        if got != math.ceil(p):
            failures.append((p, got, math.ceil(p)))
    _report("2 (power rule, minimal order = ceil(p))", failures)


@pytest.fixture(scope="module")
def passing_grids():
    """500 grids passing an order check at some n <= 6, shared by criteria 3-4."""
    rng = np.random.default_rng(3003)
    grids = []
    while len(grids) < 500:
        f = random_order_subadditive(rng)
        n = fc.minimal_order(f, 6).minimal_order
        if n is not None:
            grids.append((f, n))
    return grids


def test_criterion_03_root_and_ratio_rules(passing_grids):
    tol = fc.Tolerance(abs=1e-9, rel=0.0)
    failures = []
    for idx, (f, n) in enumerate(passing_grids):
        if not fc.check_order(fc.nth_root_transform(f, n), 1, tol).holds:
            failures.append(("root", idx, n))
        if not fc.check_order_offset(fc.ratio_transform(f, n), 1, tol).holds:
            failures.append(("ratio", idx, n))
    _report("3 (root and ratio rules, 500 grids)", failures)


def test_criterion_04_weak_bound(passing_grids):
    tol = fc.Tolerance(abs=1e-9, rel=0.0)
    failures = [
        idx
        for idx, (f, n) in enumerate(passing_grids)
        if not fc.check_weak_bound(f, n, tol).holds
    ]
    _report("4 (weak bound at the same order, 500 grids)", failures)


def test_criterion_05_minorant_exactness():
    rng = np.random.default_rng(5005)
    failures = []
    for trial in range(200):
        n = int(rng.integers(2, 15))
        f = fc.GridFunction(0.0, float(rng.choice([0.25, 0.5])), rng.uniform(0, 5, n + 1))
        res = fc.subadditive_minorant(f)
        sigma = res.sigma.values
        for k in range(n + 1):
            if float(sigma[k]) != minorant_bruteforce(f, k):
                failures.append(("oracle", trial, k))
        if not fc.check_order(res.sigma, 1).holds:
            failures.append(("subadditive", trial))
        r = res.residual.values
        if not (np.all(r >= 0.0) and np.all(r <= res.defect)):
            failures.append(("residual-range", trial))
    for trial in range(200):
        f = random_nonneg_grid(rng, max_n=40)
        g = f.with_values(f.values * rng.uniform(0.0, 1.0, f.values.size))
        if not np.all(
            fc.subadditive_minorant(g).sigma.values
            <= fc.subadditive_minorant(f).sigma.values
        ):
            failures.append(("monotone", trial))
    _report("5 (minorant exact vs brute force, 200+200 grids)", failures)


def test_criterion_06_functional_equation():
    failures = []
    for c in (-2.0, 0.0, 3.0):
        for n in (2, 3, 4):
            f = fc.sample(lambda t, c=c, n=n: c * t**n, 0, 1 / 16, 17)
            fit = fc.fit_power(f, n)
            scale = float(np.max(np.abs(f.values)))
            if fit.max_residual > 1e-12 * scale:
                failures.append((c, n, fit.max_residual))
    f = fc.sample(lambda t: t**2 + t, 0, 1.0, 4)  # contains x = 1, 2, 3
    if not fc.fit_power(f, 2).max_residual >= 1.999:
        failures.append(("square-plus-linear", fc.fit_power(f, 2).max_residual))
    _report("6 (functional equation residuals)", failures)


def test_criterion_07_periodic_equivalence_and_minorant():
    rng = np.random.default_rng(7007)
    failures = []
    for trial in range(1000):
        if rng.random() < 0.3:
            f, spec, _, _ = random_periodic_increasing_pair(rng, max_n=256)
        else:
            f = random_grid_any_sign(rng, max_n=256)
            w = int(rng.integers(1, f.n + 1))
            spec = fc.PeriodSpec(d=w * f.step, w=w)
        fast = fc.is_periodically_increasing(f, spec).holds
        if fast != periodic_check_bruteforce(f, spec):
            failures.append(("oracle-disagreement", trial))
        tilde = fc.greatest_periodic_minorant(f, spec)
        if not np.all(tilde.values <= f.values):
            failures.append(("above-f", trial))
        if not fc.is_periodically_increasing(tilde, spec).holds:
            failures.append(("tilde-not-periodic", trial))
        if fc.greatest_periodic_minorant(tilde, spec) != tilde:
            failures.append(("not-idempotent", trial))
        g = f.with_values(f.values - rng.uniform(0.0, 1.0, f.values.size))
        candidate = fc.greatest_periodic_minorant(g, spec)
        if not np.all(candidate.values <= tilde.values):
            failures.append(("not-maximal", trial))
    _report("7 (periodic check vs oracle + minorant, 1000 grids)", failures)


def test_criterion_08_hat_bound():
    rng = np.random.default_rng(8008)
    failures = []
    for trial in range(1000):
        f, spec, _, _ = random_periodic_increasing_pair(rng, max_n=128)
        rep = fc.check_hat_bound(f, spec)
        if not rep.sup_err <= rep.bound + 1e-9:
            failures.append((trial, rep.sup_err, rep.bound))
    _report("8 (hat bound on 1000 constructed functions)", failures)


def test_criterion_09_decomposition():
    failures = []

    def build(amplitude, d):
        length = 3.0 if d == 1.0 else 1.5  # both longer than 2d
        count = round(length / (d / 20)) + 1
        f = fc.sample(
            lambda t: t + amplitude * math.sin(2 * PI * t / d), 0, d / 20, count
        )
        return f, fc.PeriodSpec.for_grid(f, d)

    # combinations where the periodically-increasing hypothesis really holds
    for amplitude, d in [(0.1, 1.0), (0.3, 1.0), (0.45, 1.0), (0.1, 0.5), (0.3, 0.5)]:
        f, spec = build(amplitude, d)
        dec = fc.decompose(f, spec)
        if dec.periodicity_error > 1e-9:
            failures.append(("periodicity", amplitude, d, dec.periodicity_error))
        if not np.all(np.diff(dec.g.values) >= 0):
            failures.append(("g-not-increasing", amplitude, d))
        if abs(dec.l - d) > 1e-9:
            failures.append(("step", amplitude, d, dec.l))
    # A = 0.45 with d = 0.5 genuinely violates the hypothesis (see ledger)
    for amplitude, d in [(0.45, 0.5), (1.0, 1.0), (1.0, 0.5)]:
        f, spec = build(amplitude, d)
        try:
            fc.decompose(f, spec)
            failures.append(("missing-rejection", amplitude, d))
        except fc.GridError:
            pass
    _report("9 (periodic decomposition and rejections)", failures)


def _star_catalog():
    return {
        "x^2": fc.sample("x^2", -1, 0.25, 9),
        "x^3": fc.sample("x^3", -1, 0.25, 9),
        "sin(x)": fc.sample("sin(x)", 0, PI / 16, 33),
    }


def test_criterion_10_star_convexity():
    failures = []
    cat = _star_catalog()

    if fc.central_set(cat["x^2"]).centers != tuple(range(9)):
        failures.append("square-centers")
    if 4 not in fc.central_set(cat["x^3"]).centers:
        failures.append("cube-origin-missing")
    if 16 not in fc.central_set(cat["sin(x)"]).centers:
        failures.append("pi-not-center")
    if fc.classify_shape(cat["x^3"], 4) is not ShapeClass.CONCAVE_CONVEX:
        failures.append("cube-class")
    if not fc.region_star_check(cat["x^2"], RegionSpec(RegionKind.EPI), 4).ok:
        failures.append("square-epi")
    split = RegionSpec(RegionKind.SPLIT_HYPO_EPI, split_index=16)
    if not fc.region_star_check(cat["sin(x)"], split, 16).ok:
        failures.append("sine-split")

    swap = {
        ShapeClass.CONVEX_CONVEX: ShapeClass.CONCAVE_CONCAVE,
        ShapeClass.CONCAVE_CONCAVE: ShapeClass.CONVEX_CONVEX,
        ShapeClass.CONVEX_CONCAVE: ShapeClass.CONCAVE_CONVEX,
        ShapeClass.CONCAVE_CONVEX: ShapeClass.CONVEX_CONCAVE,
        ShapeClass.MIXED: ShapeClass.MIXED,
    }
    for name, f in cat.items():
        rep = fc.central_set(f)
        neg = fc.central_set(-f)
        if rep.centers != neg.centers:
            failures.append(("negation-centers", name))
        for p in rep.centers:
            if neg.per_center_class[p] is not swap[rep.per_center_class[p]]:
                failures.append(("negation-class", name, p))
    _report("10 (star convexity catalog)", failures)


@pytest.mark.xfail(
    strict=True,
    reason="sampled-data artifact: the neighbors of 0 are genuine centers of the "
    "sampled cubic at every grid spacing (their only crossing chord meets the "
    "grid exactly at the crossing), so the exact-{center-of-0} expectation is "
    "unattainable; see the grid-vs-refined oracle tests",
)
def test_criterion_10_cube_central_set_is_exactly_the_origin():
    centers = fc.central_set(_star_catalog()["x^3"]).centers
    failures = [] if set(centers) == {4} else [tuple(centers)]
    _report("10-cube-exact (central set of the cubic is only the origin)", failures)


GOLDEN_CASES = [
    (["min-order", "--expr", "x^2.5", "--from", "0", "--to", "1",
      "--samples", "65", "--n-max", "8"], 0),
    (["check-order", "--expr", "x^2", "--from", "0", "--to", "1",
      "--samples", "5", "--n", "1"], 1),
    (["check-order", "--expr", "x^2", "--from", "0", "--to", "1",
      "--samples", "5", "--n", "2"], 0),
    (["root", "--expr", "x^3", "--from", "0", "--to", "1",
      "--samples", "9", "--n", "3"], 0),
    (["ratio", "--expr", "x^2", "--from", "0", "--to", "1",
      "--samples", "5", "--n", "2"], 0),
    (["weak-bound", "--expr", "x^2", "--from", "0", "--to", "1",
      "--samples", "5", "--n", "2"], 0),
    (["power-fit", "--expr", "3*x^2", "--from", "0", "--to", "1",
      "--samples", "9", "--n", "2"], 0),
    (["minorant", "--expr", "x^2", "--from", "0", "--to", "1",
      "--samples", "5"], 0),
    (["periodic-check", "--expr", "x + 0.3*sin(2*pi*x)", "--from", "0",
      "--to", "3", "--samples", "61", "--d", "1"], 0),
    (["periodic-check", "--expr", "x + sin(2*pi*x)", "--from", "0",
      "--to", "3", "--samples", "61", "--d", "1"], 1),
    (["decompose", "--expr", "x + sin(2*pi*x)", "--from", "0",
      "--to", "3", "--samples", "61", "--d", "1"], 2),
    (["heights", "--expr", "0.3*sin(2*pi*x)", "--from", "0", "--to", "3",
      "--samples", "61", "--d", "1"], 0),
    (["star-centers", "--expr", "x^3", "--from", "-1", "--to", "1",
      "--samples", "9"], 0),
    (["star-region", "--expr", "sin(x)", "--from", "0", "--to", repr(2 * PI),
      "--samples", "33", "--kind", "epi", "--p", "16"], 1),
    (["check-order", "--expr", "foo(x)", "--from", "0", "--to", "1",
      "--samples", "5", "--n", "1"], 2),
]


def test_criterion_11_cli_determinism_and_exit_codes(capsys):
    assert len(GOLDEN_CASES) == 15
    failures = []
    for i, (argv, expected_code) in enumerate(GOLDEN_CASES, start=1):
        code_a = run(argv)
        out_a = capsys.readouterr().out
        code_b = run(argv)
        out_b = capsys.readouterr().out
        if code_a != expected_code:
            failures.append(("exit-code", i, code_a, expected_code))
        if code_a != code_b or out_a.encode() != out_b.encode():
            failures.append(("non-deterministic", i))
        if expected_code != 2 and out_a:
            json.loads(out_a)  # stdout must be a JSON document
    with capsys.disabled():
        print()
        _report("11 (CLI determinism and exit codes, 15 cases)", failures)
