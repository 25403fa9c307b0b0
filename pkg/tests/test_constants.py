"""Tests for the sharp-constant computations.

Expected values come from closed-form hand computation (powers of two),
from exhaustive scans over complete extreme-point sets re-evaluated inline
with plain float arithmetic (independent of the module's evaluation path),
and from the classical two-branch Khinchin formula. The trilinear
Bohnenblust-Hille value is additionally frozen as a regression constant.
"""

import json
import math
from fractions import Fraction

import pytest

from extremeforms.core import FormVector
from extremeforms.constants import (
    ConstantReport,
    bh_constant,
    f_lambda,
    khinchin_Aq,
    khinchin_branch_point,
    maximize_convex,
    mixed_littlewood_constant,
    two_slot_constant,
)
from extremeforms.search import ExtremeSet, in_unit_ball

F = Fraction

SQRT2 = math.sqrt(2.0)


def form(coeffs, m, n):
    return FormVector(tuple(coeffs), m, n)


# ---------------------------------------------------------------------------
# f_lambda
# ---------------------------------------------------------------------------

def test_f_lambda_coordinate_form():
    a = form((0, 0, 0, 1), 2, 2)
    for lam in (1, F(4, 3), 2, 3, 10):
        assert f_lambda(a, lam) == 1.0


def test_f_lambda_half_point():
    a = form((F(1, 2), F(1, 2), F(1, 2), F(-1, 2)), 2, 2)
    assert abs(f_lambda(a, F(4, 3)) - SQRT2) < 1e-12
    assert f_lambda(a, 1) == 2.0
    assert f_lambda(a, 2) == 1.0


def test_f_lambda_zero_form():
    a = form((0, 0, 0, 0), 2, 2)
    assert f_lambda(a, F(4, 3)) == 0.0


def test_f_lambda_rejects_small_exponent():
    a = form((0, 0, 0, 1), 2, 2)
    with pytest.raises(ValueError):
        f_lambda(a, F(1, 2))
    with pytest.raises(ValueError):
        f_lambda(a, 0.99)


def test_f_lambda_monotone_in_exponent(set22):
    grid = [1, F(4, 3), F(3, 2), 2, 3, 8]
    for point in set22.points:
        values = [f_lambda(point, lam) for lam in grid]
        for lower, higher in zip(values, values[1:]):
            assert higher <= lower + 1e-12


# ---------------------------------------------------------------------------
# maximize_convex
# ---------------------------------------------------------------------------

def test_maximize_norm_functional(set22):
    def sup_norm(a):
        return float(in_unit_ball(a).value)

    report = maximize_convex(set22, sup_norm, name="sup-norm")
    assert report.value == 1.0
    assert report.argmax in set22
    assert report.name == "sup-norm"
    assert report.m == 2 and report.n == 2


def test_maximize_f43(set22):
    report = maximize_convex(set22, lambda a: f_lambda(a, F(4, 3)),
                             name="f-4/3", exponent=F(4, 3))
    assert abs(report.value - SQRT2) < 1e-12
    # 1e-12 tie window plus lexicographically-largest tie-break pins the
    # reported maximizer among the eight equal-value half-integer points.
    assert report.argmax.coeffs == (F(1, 2), F(1, 2), F(1, 2), F(-1, 2))


def test_maximize_first_coefficient(set22):
    report = maximize_convex(set22, lambda a: abs(float(a.coeffs[0])),
                             name="first-coeff")
    assert report.value == 1.0
    assert report.argmax.coeffs == (F(1), F(0), F(0), F(0))


def test_maximize_rejects_empty():
    empty = ExtremeSet(2, 2, ())
    with pytest.raises(ValueError):
        maximize_convex(empty, lambda a: 0.0, name="empty")


def test_maximize_envelope(set22):
    # Convexity: the reported max dominates the functional on any sample
    # of the ball boundary, and the extreme points themselves attain it.
    functional = lambda a: f_lambda(a, F(4, 3))
    report = maximize_convex(set22, functional, name="envelope")
    sample = list(set22.points)
    points = set22.points
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            mid = tuple((a + b) / 2 for a, b in zip(points[i].coeffs,
                                                    points[j].coeffs))
            if all(c == 0 for c in mid):
                continue
            norm = in_unit_ball(form(mid, 2, 2)).value
            boundary = tuple(c / norm for c in mid)
            sample.append(form(boundary, 2, 2))
    sample_max = max(functional(a) for a in sample)
    assert sample_max <= report.value + 1e-12
    assert report.value <= sample_max + 1e-12


# ---------------------------------------------------------------------------
# Bohnenblust-Hille and mixed constants
# ---------------------------------------------------------------------------

def test_bh_bilinear(set22):
    report = bh_constant(2, 2, set22)
    assert abs(report.value - SQRT2) < 1e-9
    assert report.exponent == F(4, 3)
    assert report.exact_note == "2^(1/2)"
    assert report.argmax.coeffs == (F(1, 2), F(1, 2), F(1, 2), F(-1, 2))


def test_bh_linear_is_one():
    from extremeforms.search import extreme_points

    for n in (1, 2, 3):
        report = bh_constant(1, n, extreme_points(1, n))
        assert report.value == 1.0
        assert report.exponent == 1


def test_bh_trilinear_regression(planar3):
    # Exhaustive scan over all 256 planar extreme points, re-evaluated
    # here with plain float arithmetic as an independent oracle; the
    # literal is additionally frozen as a regression value.
    lam = 1.5
    oracle = max((math.fsum(abs(float(c)) ** lam for c in p.coeffs))
                 ** (1.0 / lam) for p in planar3.points)
    report = bh_constant(3, 2, planar3)
    assert abs(report.value - oracle) < 1e-12
    assert abs(report.value - 1.3246116516982822) < 1e-12
    assert report.exact_note is None
    assert report.argmax.coeffs == (F(3, 4), F(1, 4), F(1, 4), F(-1, 4),
                                    F(1, 4), F(-1, 4), F(-1, 4), F(1, 4))


def test_bh_at_least_one(set22, planar3):
    assert bh_constant(2, 2, set22).value >= 1.0
    assert bh_constant(3, 2, planar3).value >= 1.0


def test_bh_bilinear_r3_regression(set23):
    # for bilinear forms the maximum over R^3 is already attained at the
    # embedded R^2 maximizer, so the value stays sqrt(2)
    report = bh_constant(2, 3, set23)
    assert abs(report.value - SQRT2) < 1e-9
    assert report.exact_note == "2^(1/2)"


def test_bh_embedding_monotone(set22, set23):
    assert bh_constant(2, 3, set23).value >= \
        bh_constant(2, 2, set22).value - 1e-12


def test_bh_rejects_mismatched_set(set22):
    with pytest.raises(ValueError):
        bh_constant(3, 2, set22)


def test_mixed_littlewood_bilinear(set22):
    report = mixed_littlewood_constant(2, 2, set22)
    assert abs(report.value - 2 ** 0.75) < 1e-9
    assert report.exact_note == "2^(3/4)"


def test_mixed_littlewood_linear():
    from extremeforms.search import extreme_points

    report = mixed_littlewood_constant(1, 2, extreme_points(1, 2))
    assert abs(report.value - SQRT2) < 1e-12


def test_mixed_littlewood_formula(planar3):
    bh = bh_constant(3, 2, planar3)
    mixed = mixed_littlewood_constant(3, 2, planar3)
    assert abs(mixed.value - 2 ** (1 / 6) * bh.value) < 1e-15
    assert mixed.argmax.coeffs == bh.argmax.coeffs


# ---------------------------------------------------------------------------
# Khinchin constants
# ---------------------------------------------------------------------------

def test_khinchin_q2_is_one():
    assert abs(khinchin_Aq(2) - 1.0) < 1e-12


def test_khinchin_q43():
    assert abs(khinchin_Aq(F(4, 3)) - 2 ** -0.25) < 1e-12


def test_khinchin_branch_point_location():
    q0 = khinchin_branch_point()
    assert abs(q0 - 1.8474) < 5e-4
    # the defining equation holds to root-finding accuracy
    assert abs(math.gamma((q0 + 1) / 2) - math.sqrt(math.pi) / 2) < 1e-10


def test_khinchin_continuous_at_branch_point():
    q0 = khinchin_branch_point()
    below = khinchin_Aq(q0 - 1e-9)
    above = khinchin_Aq(q0 + 1e-9)
    assert abs(below - above) < 1e-6


def test_khinchin_monotone_and_bounded():
    grid = [0.1, 0.5, 1.0, 1.5, 1.8, 1.9, 2.0]
    values = [khinchin_Aq(q) for q in grid]
    for lower, higher in zip(values, values[1:]):
        assert lower <= higher + 1e-12
    assert all(0 < v <= 1.0 + 1e-12 for v in values)


def test_khinchin_domain():
    for bad in (0, -1, 2.0001, 3):
        with pytest.raises(ValueError):
            khinchin_Aq(bad)


# ---------------------------------------------------------------------------
# two-slot constant
# ---------------------------------------------------------------------------

def test_two_slot_values():
    assert two_slot_constant(1) == 1.0
    assert abs(two_slot_constant(2) - SQRT2) < 1e-15
    assert abs(two_slot_constant(4) - 2 ** 0.75) < 1e-15
    with pytest.raises(ValueError):
        two_slot_constant(0)


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------

def test_report_json_shape(set22):
    report = bh_constant(2, 2, set22)
    payload = report.to_json_dict()
    assert set(payload) == {"name", "m", "n", "lambda", "value", "argmax",
                            "exact_note"}
    assert payload["lambda"] == "4/3"
    assert payload["argmax"] == ["1/2", "1/2", "1/2", "-1/2"]
    assert payload["exact_note"] == "2^(1/2)"
    json.dumps(payload)


def test_report_json_without_exponent(set22):
    report = maximize_convex(set22, lambda a: 0.5, name="constant")
    payload = report.to_json_dict()
    assert payload["lambda"] is None
    assert payload["exact_note"] is None
    json.dumps(payload)
