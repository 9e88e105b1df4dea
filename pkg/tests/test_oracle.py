import numpy as np
import pytest

import funclass as fc
from funclass.oracle import (
    center_check_hires,
    minorant_bruteforce,
    periodic_check_bruteforce,
)


class TestMinorantBruteforce:
    def test_square_grid_partition_of_four(self):
        f = fc.sample("x^2", 0, 0.25, 5)
        assert minorant_bruteforce(f, 4) == 0.25  # four parts of one step each

    def test_single_part(self):
        f = fc.GridFunction(0.0, 1.0, [5.0, 3.0, 9.0])
        assert minorant_bruteforce(f, 1) == 3.0

    def test_constant_one_prefers_whole_part(self):
        f = fc.GridFunction(0.0, 1.0, np.ones(4))
        assert minorant_bruteforce(f, 3) == 1.0

    def test_index_zero_returns_value(self):
        f = fc.GridFunction(0.0, 1.0, [2.0, 3.0, 4.0])
        assert minorant_bruteforce(f, 0) == 2.0

    def test_caps_grid_size(self):
        f = fc.GridFunction(0.0, 1.0, np.zeros(17))
        with pytest.raises(fc.GridError, match="N <= 14"):
            minorant_bruteforce(f, 3)

    def test_rejects_bad_index(self):
        f = fc.GridFunction(0.0, 1.0, np.zeros(4))
        with pytest.raises(fc.GridError):
            minorant_bruteforce(f, 9)


class TestPeriodicBruteforce:
    def test_monotone_passes(self):
        f = fc.sample("x", 0, 0.5, 9)
        assert periodic_check_bruteforce(f, fc.PeriodSpec(d=1.0, w=2))

    def test_detects_distant_decrease(self):
        f = fc.GridFunction(0.0, 1.0, [5.0, 0.0, 0.0, 1.0])
        assert not periodic_check_bruteforce(f, fc.PeriodSpec(d=2.0, w=2))


class TestCenterHires:
    def test_requires_reasonable_factor(self):
        f = fc.sample("x^2", -1, 0.25, 9)
        with pytest.raises(fc.GridError):
            center_check_hires("x^2", f, 4, factor=1)

    def test_callable_source(self):
        f = fc.sample(lambda t: t * t, -1, 0.25, 9)
        assert center_check_hires(lambda t: t * t, f, 4) is True


def test_production_code_never_imports_the_oracle():
    # the dependency is one-way: oracles exist for tests only
    import pathlib

    import funclass

    package = pathlib.Path(funclass.__file__).parent
    for path in package.glob("*.py"):
        if path.name == "oracle.py":
            continue
        assert "oracle" not in path.read_text(encoding="utf-8"), path.name
