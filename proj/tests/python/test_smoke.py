from fractions import Fraction

import pytest

import orthocount as oc


def test_e8_identity():
    rows = oc.e8_check(20)
    assert len(rows) == 20
    assert all(q == r for _, q, r in rows)
    assert rows[0][2] == 240


def test_theta_z2():
    assert oc.theta_series([[2, 0], [0, 2]], 5) == [1, 4, 4, 0, 4, 8]


def test_density_routes_agree():
    d = oc.local_density(5, [[2, 1, 0], [1, 2, 0], [0, 0, 2]], 3)
    assert d["naive"] == d["recursive"] == d["stable"]
    assert isinstance(d["naive"], Fraction)


def test_min_set():
    nu, argmin = oc.min_set(5, [10, 1], 2)
    assert nu == 15
    assert argmin == [[1, 2]]
    assert oc.minval_violations(7, [3, 5, 9], 5) == []


def test_ssmain_constants():
    assert oc.ssmain_bound(5, 6, "nonss")["closed_form"] == Fraction(7, 20)
    assert oc.ssmain_bound(5, 6, "ssp1")["closed_form"] == Fraction(61, 62)
    assert oc.ssmain_bound(5, 6, "ssp2")["closed_form"] == Fraction(17, 20)


def test_case1_trace():
    rows = oc.superspecial_case1_trace(700, 1)
    assert [r["nu"] for r in rows] == [11, 61, 6, 36]
    assert all(r["ok"] for r in rows)


def test_formal_curve_and_equation():
    steps = oc.formal_curve(5, 1, 1)
    assert steps[1]["m"] == 37
    assert steps[1]["levels_certified"] == 5**25
    assert oc.nonordinary_equation(2, 1) == ("y1", True)


def test_input_error():
    with pytest.raises(ValueError):
        oc.min_set(5, [0, 1], 2)
