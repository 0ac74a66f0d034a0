import math

import numpy as np
import pytest

from src.critical import (RESIDUAL_TOL, CriticalStatus, SolveMethod, critical_factor, is_case1_angle,
                          r_bottom, r_side, r_top, solve_numeric, sweep, sweep_angles)
from src.errors import InvalidParamsError
from src.extremal import ExtremeKind, difference

TOP, BOTTOM, SIDE = ExtremeKind.TOP, ExtremeKind.BOTTOM, ExtremeKind.SIDE


def closed_top(theta):
    c = math.cos(math.radians(theta))
    if theta < 120:
        return -(c + math.sqrt(1 - 3 * c * c)) / (4 * c * c - 1)
    return -1 / (2 * c)


def test_top_at_135_is_inverse_root_two():
    result = r_top(135.0)
    assert result.status is CriticalStatus.FOUND
    assert result.method is SolveMethod.CLOSED_FORM
    assert result.r_value == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert result.residual < 1e-12


def test_top_at_65_is_numeric():
    result = r_top(65.0)
    assert result.method is SolveMethod.NUMERIC
    assert result.r_value == pytest.approx(0.96984, abs=1e-5)
    assert abs(difference(TOP, 65.0, result.r_value)) < 1e-8


@pytest.mark.parametrize("theta", [120.0, 90.0, 72.0, 60.0, 360.0 / 7])
def test_top_undefined_at_special_angles(theta):
    result = r_top(theta)
    assert result.status is CriticalStatus.UNDEFINED_SPECIAL_ANGLE
    assert result.r_value is None


def test_case1_detection():
    assert is_case1_angle(120.0) == 3
    assert is_case1_angle(360.0 / 11) == 11
    assert is_case1_angle(121.0) is None
    with pytest.raises(InvalidParamsError):
        is_case1_angle(180.0)


@pytest.mark.parametrize("theta", list(np.arange(91.0, 120.0)) + list(np.arange(121.0, 180.0)))
def test_numeric_top_agrees_with_closed_form(theta):
    numeric = solve_numeric(TOP, theta)
    assert numeric.found
    assert abs(numeric.r_value - closed_top(theta)) < 1e-8


@pytest.mark.parametrize("theta", np.arange(145.0, 180.0))
def test_numeric_bottom_agrees_with_closed_form(theta):
    c = math.cos(math.radians(theta))
    numeric = solve_numeric(BOTTOM, theta)
    assert numeric.found
    assert abs(numeric.r_value - 2 * c / (1 - 4 * c * c)) < 1e-8


def test_limits_near_straight_angle():
    assert r_top(179.9).r_value == pytest.approx(0.5, abs=5e-3)
    assert r_bottom(179.9).r_value == pytest.approx(2 / 3, abs=5e-3)


@pytest.mark.parametrize("theta", [119.5, 120.5])
def test_top_approaches_one_near_special_angle(theta):
    assert r_top(theta).r_value > 0.95


def test_bottom_closed_form_above_144():
    result = r_bottom(160.0)
    assert result.method is SolveMethod.CLOSED_FORM
    c = math.cos(math.radians(160.0))
    assert result.r_value == pytest.approx(2 * c / (1 - 4 * c * c), abs=1e-15)
    assert result.r_value < 0.8


def test_bottom_without_solution_at_120():
    result = r_bottom(120.0)
    assert result.status is CriticalStatus.NO_SOLUTION_BELOW_ONE
    assert result.r_value is None


def test_bottom_numeric_below_144():
    result = r_bottom(100.0)
    assert result.found
    assert result.method is SolveMethod.NUMERIC
    assert 0.95 < result.r_value < 1.0


def test_side_examples():
    result = r_side(100.0)
    assert result.found
    # the 100/0.95 tree is already past r_S
    assert 0.92 < result.r_value < 0.95
    wide = r_side(130.0)
    assert wide.found and wide.r_value > 0.92
    narrow = r_side(60.0)
    assert not narrow.found or narrow.r_value > 0.99


def test_dispatch():
    assert critical_factor(TOP, 135.0) == r_top(135.0)
    assert critical_factor(SIDE, 100.0) == r_side(100.0)


def test_domain_errors():
    with pytest.raises(InvalidParamsError):
        r_top(0.0)
    with pytest.raises(InvalidParamsError):
        r_bottom(200.0)
    with pytest.raises(InvalidParamsError):
        r_side(float('nan'))


def test_sweep_angles_are_inclusive_and_clean():
    assert sweep_angles(90.0, 91.0, 0.25) == [90.0, 90.25, 90.5, 90.75, 91.0]
    assert sweep_angles(100.0, 130.0, 0.1)[200] == 120.0
    with pytest.raises(InvalidParamsError):
        sweep_angles(100.0, 90.0, 1.0)
    with pytest.raises(InvalidParamsError):
        sweep_angles(90.0, 100.0, 0.0)


def test_sweep_rows_in_order_with_gap():
    rows = sweep(TOP, 118.0, 122.0, 1.0)
    assert [row.theta for row in rows] == [118.0, 119.0, 120.0, 121.0, 122.0]
    assert rows[2].result.status is CriticalStatus.UNDEFINED_SPECIAL_ANGLE
    assert all(row.result.found for i, row in enumerate(rows) if i != 2)
    assert abs(rows[2].numerator) < 1e-12


def test_sweep_independent_of_workers():
    serial = sweep(BOTTOM, 140.0, 170.0, 5.0, workers=1)
    parallel = sweep(BOTTOM, 140.0, 170.0, 5.0, workers=2)
    assert serial == parallel


def test_bottom_at_144_has_no_solution():
    result = r_bottom(144.0)
    assert result.status is CriticalStatus.NO_SOLUTION_BELOW_ONE
    assert result.method is SolveMethod.CLOSED_FORM


@pytest.mark.parametrize("kind, theta", [(TOP, 65.0), (TOP, 100.0), (TOP, 150.0),
                                         (BOTTOM, 100.0), (BOTTOM, 160.0), (SIDE, 100.0)])
def test_found_roots_are_bracketed(kind, theta):
    result = critical_factor(kind, theta)
    assert result.found
    assert result.residual < 1e-10
    assert result.precise
    below = difference(kind, theta, result.r_value - 1e-6)
    above = difference(kind, theta, result.r_value + 1e-6)
    assert below * above < 0


def test_top_factor_below_90_exceeds_094():
    found = [r_top(theta) for theta in np.arange(5.5, 90.0, 6.5)]
    found = [result for result in found if result.found]
    assert found
    assert all(result.r_value > 0.94 for result in found)


@pytest.mark.parametrize("kind, theta", [(TOP, 3.5), (TOP, 5.5), (TOP, 9.5), (SIDE, 3.5)])
def test_roots_near_one_are_flagged_imprecise(kind, theta):
    result = critical_factor(kind, theta)
    assert result.found
    assert result.r_value > 0.94
    assert result.precise == (result.residual < RESIDUAL_TOL)


def test_precision_flag_tracks_residual_at_small_angles():
    results = [critical_factor(kind, theta) for kind in (TOP, SIDE)
               for theta in np.arange(1.5, 12.0, 1.0)]
    found = [result for result in results if result.found]
    assert found
    assert all(result.precise == (result.residual < RESIDUAL_TOL) for result in found)
    assert not r_top(3.5).precise
    assert r_top(135.0).precise


def test_top_sweep_matches_closed_form():
    rows = sweep(TOP, 121.0, 179.0, 1.0)
    assert len(rows) == 59
    for row in rows:
        assert row.result.found
        assert abs(row.result.r_value + 1 / (2 * math.cos(math.radians(row.theta)))) < 1e-9


def test_bottom_sweep_below_102_stays_above_095():
    rows = sweep(BOTTOM, 30.0, 102.0, 1.0)
    found = [row.result.r_value for row in rows if row.result.found]
    assert found
    assert all(value > 0.95 for value in found)
