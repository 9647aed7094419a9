"""Closed-form profiles: exact derivatives, poles, parameter validation."""

import numpy as np
import pytest

from nilsurf.errors import EvalAtPoleError, MissingParamError
from nilsurf.profiles import profile_closed_form

ALL_KINDS = {
    "affine": {"a": 0.7, "b": -0.3},
    "poly2": {"a": 0.6, "b": 0.2, "c": -1.0},
    "quadratic": {"p2": 0.4, "p1": -0.1, "p0": 2.0},
    "sin": {"amp": 1.3, "omega": 0.8},
    "asinh": {"amp": 0.9},
    "reciprocal": {"a": 1.1, "b": 0.4},
    "sol_v": {"a": 0.5, "c": 0.7, "v0": -0.2},
    "sol_v2": {"a": 0.4, "b": 0.6, "c": -0.5},
    "sol_v3": {"a": -0.3, "b": 0.1, "c": 0.8},
    "sol_u5": {"a": 0.9, "b": -0.4, "c": 0.3, "c1": 0.6},
    "sol_u6": {"a": 0.9, "b": -0.4, "c": 0.3, "c1": 0.6},
}


def sample_points(profile):
    ts = np.linspace(0.8, 2.3, 7)
    # Keep the central-difference stencil away from any pole.
    for pole in profile.excluded:
        ts = ts[np.abs(ts - pole) > 0.2]
    return ts


@pytest.mark.parametrize("kind", sorted(ALL_KINDS))
def test_derivatives_match_central_differences(kind):
    f = profile_closed_form(kind, ALL_KINDS[kind])
    h = 1e-5
    for t in sample_points(f):
        d1_num = (f.value(t + h) - f.value(t - h)) / (2 * h)
        d2_num = (f.value(t + h) - 2 * f.value(t) + f.value(t - h)) / (h * h)
        scale = 1 + abs(f.d1(t)) + abs(f.d2(t))
        assert abs(f.d1(t) - d1_num) <= 1e-7 * scale
        assert abs(f.d2(t) - d2_num) <= 1e-4 * scale


def test_sol_v_at_origin():
    f = profile_closed_form("sol_v", {"a": 0.0, "c": 1.0, "v0": 0.0})
    v0, v1, v2 = f.eval2(0.0)
    assert v0 == pytest.approx(0.0, abs=1e-15)
    assert v1 == pytest.approx(2.0, abs=1e-15)
    assert v2 == pytest.approx(0.0, abs=1e-15)


def test_sol_v_satisfies_its_first_order_equation():
    a, c = 0.3, -0.8
    f = profile_closed_form("sol_v", {"a": a, "c": c, "v0": 1.0})
    for t in np.linspace(-2, 2, 9):
        assert f.d1(t) == pytest.approx(2 * c * np.sqrt(1 + (a + t) ** 2), rel=1e-14)


@pytest.mark.parametrize(
    "kind,params,pole",
    [
        ("reciprocal", {"a": 1.0, "b": 0.0}, 0.0),
        ("sol_v2", {"a": 0.4, "b": 0.6, "c": -0.5}, -0.8),
        ("sol_v3", {"a": 0.4, "b": 0.6, "c": -0.5}, 0.8),
    ],
)
def test_pole_locations_and_eval_guard(kind, params, pole):
    f = profile_closed_form(kind, params)
    assert f.excluded == (pole,)
    with pytest.raises(EvalAtPoleError):
        f.value(pole)
    with pytest.raises(EvalAtPoleError):
        f.eval2(np.array([pole - 1.0, pole, pole + 1.0]))


def test_w_substitution_identity_sol_v2():
    # (2a + t) v(t) must equal the log-radical antiderivative w(a + t).
    a, b, c = 0.4, 0.6, -0.5
    f = profile_closed_form("sol_v2", {"a": a, "b": b, "c": c})
    for t in np.linspace(0.2, 2.0, 7):
        s = a + t
        w = b + (c / 2) * (s * np.sqrt(1 + s * s) + np.arcsinh(s))
        assert (2 * a + t) * f.value(t) == pytest.approx(w, rel=1e-14, abs=1e-14)


def test_w_substitution_identity_sol_v3():
    a, b, c = -0.3, 0.1, 0.8
    f = profile_closed_form("sol_v3", {"a": a, "b": b, "c": c})
    for t in np.linspace(0.2, 2.0, 7):
        s = a - t
        w = b + (c / 2) * (s * np.sqrt(1 + s * s) + np.arcsinh(s))
        assert (2 * a - t) * f.value(t) == pytest.approx(w, rel=1e-14, abs=1e-14)


def test_sol_u5_slope_closed_form():
    a, b, c1 = 0.9, -0.4, 0.6
    f = profile_closed_form("sol_u5", {"a": a, "b": b, "c": 0.3, "c1": c1})
    for t in np.linspace(-2, 2, 9):
        big = 2 * t + b
        expected = -a * big / (2 * (1 + a * a)) + c1 * np.sqrt(4 * (1 + a * a) + big * big)
        assert f.d1(t) == pytest.approx(expected, rel=1e-14, abs=1e-14)


def test_sol_u6_flips_quadratic_block_only():
    params = {"a": 0.9, "b": -0.4, "c": 0.0, "c1": 0.6}
    u5 = profile_closed_form("sol_u5", params)
    u6 = profile_closed_form("sol_u6", params)
    a = params["a"]
    for t in (0.0, 0.7, -1.3):
        big = 2 * t + params["b"]
        assert u6.d1(t) - u5.d1(t) == pytest.approx(
            a * big / (1 + a * a), rel=1e-13, abs=1e-13
        )


def test_missing_and_unknown_params_rejected():
    with pytest.raises(MissingParamError):
        profile_closed_form("sol_v", {"a": 0.1, "c": 0.2})
    with pytest.raises(MissingParamError):
        profile_closed_form("affine", {"a": 0.1, "b": 0.2, "junk": 1.0})
    with pytest.raises(MissingParamError):
        profile_closed_form("no_such_kind", {})


def test_profiles_vectorize():
    f = profile_closed_form("sol_v2", {"a": 0.4, "b": 0.6, "c": -0.5})
    ts = np.linspace(0.1, 1.5, 5)
    v0, v1, v2 = f.eval2(ts)
    assert v0.shape == v1.shape == v2.shape == ts.shape
