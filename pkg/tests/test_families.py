"""Family constructors, spec parsing, safe domains, degenerate-curve cases."""

import numpy as np
import pytest

from nilsurf.errors import InvalidCaseError, InvalidSpecError
from nilsurf.families import (
    ALL_CASES,
    ALLOWED_PARAMS,
    CaseId,
    FamilySpec,
    family_surface,
    missing_case_surface,
    parse_family_spec,
    random_spec,
    safe_domain,
    surface_from_profiles,
)
from nilsurf.nil3 import Point3, group_mul
from nilsurf.profiles import profile_closed_form
from nilsurf.surface import Domain, grid_scan, jet2, minimality_residual


def test_type1_zero_parameters_is_the_saddle():
    surf = family_surface(FamilySpec(1))
    p = surf.point(0.8, -1.3)
    assert (p.x, p.y) == (0.8, -1.3)
    assert p.z == pytest.approx(0.8 * -1.3 / 2, abs=1e-15)


def test_type5i_layout_example():
    surf = family_surface(FamilySpec(5, "i", {"u0": 0.0, "a": 1.0, "b": 0.0}))
    p = surf.point(0.5, 2.0)
    assert p.x == pytest.approx(0.5 + 1 / 2.0, abs=1e-15)
    assert p.y == 2.0
    assert p.z == pytest.approx(-0.5 * 2.0 / 2, abs=1e-15)
    assert surf.domain.excluded_y == (0.0,)


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        FamilySpec(7)
    with pytest.raises(InvalidSpecError):
        FamilySpec(2)  # variant required
    with pytest.raises(InvalidSpecError):
        FamilySpec(1, "i")  # no variant allowed
    with pytest.raises(InvalidSpecError):
        FamilySpec(1, params={"zz": 1.0})
    with pytest.raises(InvalidSpecError):
        FamilySpec(5, "i", {"c1": 0.3})  # c1 belongs to variant ii


def test_parse_family_spec_round_trip_and_rejection():
    doc = {"type": 2, "variant": "ii", "params": {"a": 0.4, "b": 0.1}}
    spec = parse_family_spec(doc)
    assert spec.key() == (2, "ii")
    assert spec.to_json_dict() == doc
    with pytest.raises(InvalidSpecError):
        parse_family_spec({"type": 1, "extra": True})
    with pytest.raises(InvalidSpecError):
        parse_family_spec({"variant": "i"})
    with pytest.raises(InvalidSpecError):
        parse_family_spec({"type": 1, "params": [1, 2]})


def test_every_family_is_minimal_on_its_safe_domain():
    rng = np.random.default_rng(11)
    for key in ALLOWED_PARAMS:
        spec = random_spec(*key, rng)
        surf = family_surface(spec).with_domain(safe_domain(spec, 2.0))
        report = grid_scan(surf, 9, 9, include_curvature=False)
        assert report.max_abs_h < 1e-10, f"family {key} not minimal"


def test_safe_domain_shifts_past_poles():
    # Type 2(ii) with a = 0 has its pole at y = 0, in the middle of the
    # default square; the y-interval must move just past it.
    spec = FamilySpec(2, "ii", {"a": 0.0, "u0": 0.0, "b": 0.5, "c": 0.3})
    dom = safe_domain(spec, 1.5)
    assert (dom.x_min, dom.x_max) == (-1.5, 1.5)
    assert dom.y_min == pytest.approx(0.25)
    assert dom.y_max == pytest.approx(0.25 + 3.0)
    # A pole outside the square leaves the square alone.
    spec_far = FamilySpec(2, "ii", {"a": 5.0, "u0": 0.0, "b": 0.5, "c": 0.3})
    dom_far = safe_domain(spec_far, 1.5)
    assert (dom_far.y_min, dom_far.y_max) == (-1.5, 1.5)


def test_type1_member_is_invariant_under_a_left_translation():
    # With u identically zero, moving x -> x + t equals left multiplication
    # by (t, 0, 0); the surface is a left-invariant cylinder over a curve.
    surf = family_surface(FamilySpec(1, params={"c": 0.6, "v0": -0.4}))
    t = 0.9
    for x, y in ((0.0, 0.0), (0.5, -1.2), (-1.0, 1.7)):
        moved = surf.point(x + t, y)
        composed = group_mul(Point3(t, 0.0, 0.0), surf.point(x, y))
        assert moved.x == pytest.approx(composed.x, abs=1e-14)
        assert moved.y == pytest.approx(composed.y, abs=1e-14)
        assert moved.z == pytest.approx(composed.z, abs=1e-14)


def test_nonzero_d_warns_and_breaks_minimality():
    spec = FamilySpec(2, "i", {"a": 0.5, "b": 0.2, "c": 0.0, "d": 0.5})
    with pytest.warns(UserWarning):
        surf = family_surface(spec)
    res = abs(minimality_residual(jet2(surf.with_domain(Domain(-1, 1, -1, 1)), 0.3, 0.4)))
    assert res > 1e-3


def test_type3_display_parametrization_is_not_minimal():
    u = profile_closed_form("poly2", {"a": 0.5, "b": 0.2, "c": 0.0})
    v = profile_closed_form("affine", {"a": -0.5, "b": 0.0})
    body = surface_from_profiles(3, u, v, parametrization="body")
    display = surface_from_profiles(3, u, v, parametrization="display")
    dom = Domain(-1, 1, -1, 1)
    r_body = grid_scan(body.with_domain(dom), 7, 7, include_curvature=False)
    r_display = grid_scan(display.with_domain(dom), 7, 7, include_curvature=False)
    assert r_body.max_abs_h < 1e-12
    assert r_display.max_abs_h > 1e-3
    with pytest.raises(InvalidSpecError):
        surface_from_profiles(3, u, v, parametrization="sideways")


def test_case_table_shape_and_star_marking():
    assert len(ALL_CASES) == 12
    starred = [c for c in ALL_CASES if c.starred]
    assert [(c.type, c.slot) for c in starred] == [
        (2, "first"),
        (3, "first"),
        (5, "first"),
        (6, "first"),
    ]
    with pytest.raises(InvalidCaseError):
        CaseId(1, "third")
    with pytest.raises(InvalidCaseError):
        CaseId(0, "first")


def test_unstarred_cases_minimal_for_any_profile():
    wavy = profile_closed_form("sin", {})
    for case in ALL_CASES:
        if case.starred:
            continue
        surf = missing_case_surface(case, 3.0, wavy)
        dom = Domain(-1, 1, 0, 2 * np.pi) if case.slot == "first" else Domain(0, 2 * np.pi, -1, 1)
        report = grid_scan(surf.with_domain(dom), 7, 7, include_curvature=False)
        assert report.max_abs_residual < 1e-12, surf.name


def test_starred_case_residual_is_the_profile_second_derivative():
    # On starred rows the residual reduces to +/- v''; for v = sin(y) it is
    # sin(y), so |residual| = 1 at y = pi/2.
    wavy = profile_closed_form("sin", {})
    surf = missing_case_surface(CaseId(2, "first"), 0.7, wavy)
    res = minimality_residual(surf.jet_fn(0.0, np.pi / 2))
    assert abs(res) == pytest.approx(1.0, abs=1e-12)
    flat = profile_closed_form("affine", {"a": 0.4, "b": -0.2})
    surf_flat = missing_case_surface(CaseId(2, "first"), 0.7, flat)
    assert abs(minimality_residual(surf_flat.jet_fn(0.0, 1.0))) < 1e-14


def test_random_spec_ranges_and_pinned_d():
    rng = np.random.default_rng(0)
    for _ in range(50):
        spec = random_spec(2, "i", rng)
        assert spec.params["d"] == 0.0
        assert abs(spec.params["a"]) <= 2.0
        assert abs(spec.params["c"]) <= 1.0
    spec5 = random_spec(5, "ii", rng)
    assert set(spec5.params) == {"a", "b", "c", "c1"}
    assert abs(spec5.params["c1"]) <= 1.0
