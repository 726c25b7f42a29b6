import math
from fractions import Fraction

import pytest

import mincollector as mc


def harmonic(n):
    return sum(Fraction(1, j) for j in range(1, n + 1))


def test_single_collector_mean_is_n_h_n():
    for n in (2, 5, 20):
        result = mc.exact_mean(n, 1)
        assert result["mean"]["value"] == pytest.approx(float(n * harmonic(n)), abs=1e-11)
        assert result["truncation_bound"] < 1e-12


def test_second_moment_for_two_species():
    result = mc.exact_second_moment(2, 1)
    assert result["mean"]["value"] == pytest.approx(3.0, abs=1e-11)
    assert result["variance"]["value"] == pytest.approx(2.0, abs=1e-10)


def test_pair_closed_form_matches_series():
    for n in (2, 7, 15):
        closed = mc.as_fraction(mc.pair_closed_form_mean(n))
        series = mc.exact_mean(n, 2)["mean"]["value"]
        assert float(closed) == pytest.approx(series, abs=2e-12)
    assert mc.as_fraction(mc.pair_closed_form_mean(2)) == Fraction(7, 3)


def test_completion_cdf_and_stirling():
    assert mc.as_fraction(mc.completion_cdf(3, 3)) == Fraction(2, 9)
    assert mc.stirling2(10, 3) == 9330
    assert mc.as_fraction(mc.completion_cdf(4, 3)) == 0


def test_constants():
    c = mc.constants(2)
    assert c["c"]["decimal"].startswith("-0.346573590279972654708616")
    assert float(c["c"]["decimal"]) == pytest.approx(-math.log(2) / 2)
    assert mc.constants(1)["a"]["value"] == pytest.approx(math.pi ** 2 / 6)
    scan = mc.conjecture_scan(24)
    assert scan["clean"]
    assert all(x > y > 0 for x, y in zip(scan["a"], scan["a"][1:]))


def test_estimate_and_threshold():
    est = mc.estimate(100, 1)["mean"]["value"]
    assert est == pytest.approx(100 * (math.log(100) + 0.5772156649015329))
    assert mc.threshold_c_N(10) == 26
    assert mc.truncation_index(1, 1, 1e-12) == 2


def test_simulation_is_reproducible_and_covers_the_mean():
    a = mc.simulate(2, 2, 50000, 7)
    b = mc.simulate(2, 2, 50000, 7)
    assert a == b
    low, high = a["ci95"]
    assert low - 4 * a["std_error"] <= 7 / 3 <= high + 4 * a["std_error"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        mc.exact_mean(0, 1)
    with pytest.raises(mc.WorkBudgetError):
        mc.exact_mean(100, 5, budget=10)
    with pytest.raises(ValueError):
        mc.simulate(2, 1, 1, 1)
