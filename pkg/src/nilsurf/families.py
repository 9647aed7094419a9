"""Catalog of classified minimal translation surfaces.

Six classified families (types 1..6, with variants i/ii for types 2, 3, 5, 6)
plus the twelve missing-case parametrizations in which one generating
curve is a vertical coordinate line. All constructed surfaces carry exact
analytic jets built from the closed-form profile derivatives.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidCaseError, InvalidSpecError, NoSafeDomainError
from .nil3 import CoordVector, Point3
from .profiles import ProfileFn, profile_closed_form
from .surface import Domain, Jet2, ParamSurface

#: Parameter names accepted per (type, variant).
ALLOWED_PARAMS = {
    (1, None): ("a", "u0", "c", "v0"),
    (2, "i"): ("a", "b", "c", "d"),
    (2, "ii"): ("a", "u0", "b", "c"),
    (3, "i"): ("a", "b", "c", "d"),
    (3, "ii"): ("a", "u0", "b", "c"),
    (4, None): ("a", "c", "u0", "v0"),
    (5, "i"): ("u0", "a", "b"),
    (5, "ii"): ("a", "b", "c", "c1"),
    (6, "i"): ("u0", "a", "b"),
    (6, "ii"): ("a", "b", "c", "c1"),
}

#: All family keys, in catalog order.
FAMILY_KEYS = tuple(ALLOWED_PARAMS)


@dataclass(frozen=True)
class FamilySpec:
    """One member of a classified family: type, variant and real parameters."""

    type: int
    variant: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.type not in range(1, 7):
            raise InvalidSpecError(f"family type must be 1..6, got {self.type}")
        needs_variant = self.type in (2, 3, 5, 6)
        if needs_variant and self.variant not in ("i", "ii"):
            raise InvalidSpecError(f"type {self.type} requires variant 'i' or 'ii'")
        if not needs_variant and self.variant is not None:
            raise InvalidSpecError(f"type {self.type} takes no variant")
        allowed = ALLOWED_PARAMS[(self.type, self.variant)]
        unknown = [k for k in self.params if k not in allowed]
        if unknown:
            raise InvalidSpecError(
                f"type {self.type}{self.variant or ''}: unknown parameters {unknown}"
            )

    def param(self, name: str) -> float:
        return float(self.params.get(name, 0.0))

    def key(self):
        return (self.type, self.variant)

    def to_json_dict(self) -> dict:
        doc = {"type": self.type, "params": dict(self.params)}
        if self.variant is not None:
            doc["variant"] = self.variant
        return doc


def parse_family_spec(doc: dict) -> FamilySpec:
    """Parse {"type":..,"variant":..,"params":{..}}; unknown keys rejected."""
    if not isinstance(doc, dict):
        raise InvalidSpecError("family spec document must be a JSON object")
    unknown = [k for k in doc if k not in ("type", "variant", "params")]
    if unknown:
        raise InvalidSpecError(f"unknown keys in family spec: {unknown}")
    if "type" not in doc:
        raise InvalidSpecError("family spec needs a 'type'")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise InvalidSpecError("'params' must be an object")
    return FamilySpec(int(doc["type"]), doc.get("variant"), dict(params))


def _arrays(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.broadcast_arrays(x, y)


# xy-term sign per type: z carries sign * x*y/2.
_XY_SIGN = {1: 1.0, 2: 1.0, 3: -1.0, 4: -1.0, 5: -1.0, 6: 1.0}


def _graph_layout(u: ProfileFn, v: ProfileFn, sgn: float):
    """Types 1 and 4: r = (x, y, u + v + sgn*xy/2)."""

    def point(x, y):
        x, y = _arrays(x, y)
        return Point3(x, y, u.value(x) + v.value(y) + sgn * x * y / 2)

    def jet(x, y):
        x, y = _arrays(x, y)
        z = np.zeros_like(x)
        o = np.ones_like(x)
        u0, u1, u2 = u.eval2(x)
        v0, v1, v2 = v.eval2(y)
        return Jet2(
            Point3(x, y, u0 + v0 + sgn * x * y / 2),
            CoordVector(o, z, u1 + sgn * y / 2),
            CoordVector(z, o, v1 + sgn * x / 2),
            CoordVector(z, z, u2),
            CoordVector(z, z, sgn / 2 * o),
            CoordVector(z, z, v2),
            x,
            y,
        )

    return point, jet


def _shifted_layout(u: ProfileFn, v: ProfileFn, sgn: float):
    """Types 2 and 5: r = (x + v, y, u + sgn*xy/2)."""

    def point(x, y):
        x, y = _arrays(x, y)
        return Point3(x + v.value(y), y, u.value(x) + sgn * x * y / 2)

    def jet(x, y):
        x, y = _arrays(x, y)
        z = np.zeros_like(x)
        o = np.ones_like(x)
        u0, u1, u2 = u.eval2(x)
        v0, v1, v2 = v.eval2(y)
        return Jet2(
            Point3(x + v0, y, u0 + sgn * x * y / 2),
            CoordVector(o, z, u1 + sgn * y / 2),
            CoordVector(v1, o, sgn * x / 2),
            CoordVector(z, z, u2),
            CoordVector(z, z, sgn / 2 * o),
            CoordVector(v2, z, z),
            x,
            y,
        )

    return point, jet


def _swapped_layout(u: ProfileFn, v: ProfileFn, sgn: float):
    """Types 3 and 6: r = (y, x + v, u + sgn*xy/2)."""

    def point(x, y):
        x, y = _arrays(x, y)
        return Point3(y, x + v.value(y), u.value(x) + sgn * x * y / 2)

    def jet(x, y):
        x, y = _arrays(x, y)
        z = np.zeros_like(x)
        o = np.ones_like(x)
        u0, u1, u2 = u.eval2(x)
        v0, v1, v2 = v.eval2(y)
        return Jet2(
            Point3(y, x + v0, u0 + sgn * x * y / 2),
            CoordVector(z, o, u1 + sgn * y / 2),
            CoordVector(o, v1, sgn * x / 2),
            CoordVector(z, z, u2),
            CoordVector(z, z, sgn / 2 * o),
            CoordVector(z, v2, z),
            x,
            y,
        )

    return point, jet


_LAYOUTS = {
    1: _graph_layout,
    2: _shifted_layout,
    3: _swapped_layout,
    4: _graph_layout,
    5: _shifted_layout,
    6: _swapped_layout,
}


def family_profiles(
    spec: FamilySpec, type6_quad_sign: float = 1.0
) -> tuple[ProfileFn, ProfileFn]:
    """Profile pair (u, v) for a classified family member."""
    p = spec.param
    key = spec.key()
    if key == (1, None):
        u = profile_closed_form("affine", {"a": p("a"), "b": p("u0")})
        v = profile_closed_form("sol_v", {"a": p("a"), "c": p("c"), "v0": p("v0")})
    elif key == (4, None):
        u = profile_closed_form("sol_v", {"a": p("a"), "c": p("c"), "v0": p("u0")})
        v = profile_closed_form("affine", {"a": -p("a"), "b": p("v0")})
    elif key in ((2, "i"), (3, "i")):
        if p("d") != 0.0:
            warnings.warn(
                f"type {spec.type}(i): d != 0 is not minimal; the derivation forces d = 0",
                stacklevel=2,
            )
        u = profile_closed_form("poly2", {"a": p("a"), "b": p("b"), "c": p("c")})
        slope = p("a") if key == (2, "i") else -p("a")
        v = profile_closed_form("affine", {"a": slope, "b": p("d")})
    elif key == (2, "ii"):
        u = profile_closed_form("affine", {"a": p("a"), "b": p("u0")})
        v = profile_closed_form("sol_v2", {"a": p("a"), "b": p("b"), "c": p("c")})
    elif key == (3, "ii"):
        u = profile_closed_form("affine", {"a": p("a"), "b": p("u0")})
        v = profile_closed_form("sol_v3", {"a": p("a"), "b": p("b"), "c": p("c")})
    elif key in ((5, "i"), (6, "i")):
        u = profile_closed_form("affine", {"a": 0.0, "b": p("u0")})
        if p("a") == 0.0:
            v = profile_closed_form("affine", {"a": 0.0, "b": p("b")})
        else:
            v = profile_closed_form("reciprocal", {"a": p("a"), "b": p("b")})
    elif key == (5, "ii"):
        v = profile_closed_form("affine", {"a": p("a"), "b": p("b")})
        u = profile_closed_form(
            "sol_u5", {"a": p("a"), "b": p("b"), "c": p("c"), "c1": p("c1")}
        )
    elif key == (6, "ii"):
        v = profile_closed_form("affine", {"a": p("a"), "b": p("b")})
        u = profile_closed_form(
            "sol_u6",
            {
                "a": p("a"),
                "b": p("b"),
                "c": p("c"),
                "c1": p("c1"),
                "quad_sign": type6_quad_sign,
            },
        )
    else:  # pragma: no cover - exhausted above
        raise InvalidSpecError(f"unhandled family {key}")
    return u, v


def surface_from_profiles(
    family_type: int, u: ProfileFn, v: ProfileFn, parametrization: str = "body"
) -> ParamSurface:
    """Translation surface of the given type over an arbitrary profile pair.

    For type 3, parametrization='display' uses the type-2 component layout
    (the printed classification) instead of the construction in the type-3
    derivation; the two disagree and the scan arbitrates.
    """
    if family_type == 3 and parametrization == "display":
        point, jet = _shifted_layout(u, v, 1.0)
        name = "type3-display"
    elif parametrization not in ("body", "display"):
        raise InvalidSpecError(f"unknown parametrization {parametrization!r}")
    else:
        point, jet = _LAYOUTS[family_type](u, v, _XY_SIGN[family_type])
        name = f"type{family_type}"
    domain = Domain(excluded_x=tuple(u.excluded), excluded_y=tuple(v.excluded))
    return ParamSurface(point, jet, domain, name=name)


def family_surface(
    spec: FamilySpec,
    parametrization: str = "body",
    type6_quad_sign: float = 1.0,
) -> ParamSurface:
    """Analytic surface for one classified-family member."""
    u, v = family_profiles(spec, type6_quad_sign=type6_quad_sign)
    surf = surface_from_profiles(spec.type, u, v, parametrization=parametrization)
    variant = spec.variant or ""
    return ParamSurface(
        surf.point_fn, surf.jet_fn, surf.domain, name=f"type{spec.type}{variant}"
    )


@dataclass(frozen=True)
class CaseId:
    """Row of the missing-case table: family type plus table slot."""

    type: int
    slot: str  # "first" (vertical second curve) or "second" (vertical first curve)

    def __post_init__(self):
        if self.type not in range(1, 7):
            raise InvalidCaseError(f"case type must be 1..6, got {self.type}")
        if self.slot not in ("first", "second"):
            raise InvalidCaseError(f"slot must be 'first' or 'second', got {self.slot!r}")

    @property
    def starred(self) -> bool:
        """Starred rows are minimal exactly for affine profiles."""
        return self.slot == "first" and self.type in (2, 3, 5, 6)


ALL_CASES = tuple(CaseId(t, slot) for t in range(1, 7) for slot in ("first", "second"))


def missing_case_surface(case: CaseId, c: float, profile: ProfileFn) -> ParamSurface:
    """Surface for one missing-case table row.

    First-slot rows take the profile as v(y); second-slot rows take it as
    u(x). The constant c is the fixed coordinate of the degenerate curve.
    """
    sgn = _XY_SIGN[case.type]
    v = u = profile

    if case.slot == "first":
        if case.type in (1, 4):
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(c + 0 * x, y, x + v.value(y) + sgn * c * y / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, v1, v2 = v.eval2(y)
                return Jet2(
                    point(x, y),
                    CoordVector(z, z, o),
                    CoordVector(z, o, v1 + sgn * c / 2),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    CoordVector(z, z, v2),
                    x, y,
                )
        elif case.type in (2, 5):
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(c + v.value(y), y, x + sgn * c * y / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, v1, v2 = v.eval2(y)
                return Jet2(
                    point(x, y),
                    CoordVector(z, z, o),
                    CoordVector(v1, o, sgn * c / 2 * o),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    CoordVector(v2, z, z),
                    x, y,
                )
        else:  # types 3, 6
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(y, c + v.value(y), x + sgn * c * y / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, v1, v2 = v.eval2(y)
                return Jet2(
                    point(x, y),
                    CoordVector(z, z, o),
                    CoordVector(o, v1, sgn * c / 2 * o),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    CoordVector(z, v2, z),
                    x, y,
                )
        domain = Domain(excluded_y=tuple(profile.excluded))
    else:
        if case.type in (1, 4):
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(x, c + 0 * x, u.value(x) + y + sgn * c * x / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, u1, u2 = u.eval2(x)
                return Jet2(
                    point(x, y),
                    CoordVector(o, z, u1 + sgn * c / 2),
                    CoordVector(z, z, o),
                    CoordVector(z, z, u2),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    x, y,
                )
        elif case.type in (2, 5):
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(x + y, c + 0 * x, u.value(x) + sgn * c * x / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, u1, u2 = u.eval2(x)
                return Jet2(
                    point(x, y),
                    CoordVector(o, z, u1 + sgn * c / 2),
                    CoordVector(o, z, z),
                    CoordVector(z, z, u2),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    x, y,
                )
        else:  # types 3, 6
            def point(x, y):
                x, y = _arrays(x, y)
                return Point3(c + 0 * x, x + y, u.value(x) + sgn * c * x / 2)

            def jet(x, y):
                x, y = _arrays(x, y)
                z, o = np.zeros_like(x), np.ones_like(x)
                _, u1, u2 = u.eval2(x)
                return Jet2(
                    point(x, y),
                    CoordVector(z, o, u1 + sgn * c / 2),
                    CoordVector(z, o, z),
                    CoordVector(z, z, u2),
                    CoordVector(z, z, z),
                    CoordVector(z, z, z),
                    x, y,
                )
        domain = Domain(excluded_x=tuple(profile.excluded))

    star = "*" if case.starred else ""
    return ParamSurface(point, jet, domain, name=f"case{case.type}{star}-{case.slot}")


def _shift_interval(lo: float, hi: float, poles, pad: float) -> tuple[float, float]:
    width = hi - lo
    for pole in sorted(poles):
        if lo - pad <= pole <= hi + pad:
            lo = pole + 0.25
            hi = lo + width
    for pole in poles:
        if lo - pad <= pole <= hi + pad:
            raise NoSafeDomainError(
                f"cannot place interval of width {width} between poles {sorted(poles)}"
            )
    return lo, hi


def safe_domain(spec: FamilySpec, half_width: float, pad: float = 1e-2) -> Domain:
    """Square domain of the given half-width with poles kept outside.

    Starts from [-w, w]^2 and shifts an axis past any pole that falls
    within `pad` of it; deterministic in the spec.
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    surf = family_surface(spec)
    w = half_width
    x_lo, x_hi = _shift_interval(-w, w, surf.domain.excluded_x, pad)
    y_lo, y_hi = _shift_interval(-w, w, surf.domain.excluded_y, pad)
    return Domain(
        x_lo, x_hi, y_lo, y_hi,
        excluded_x=surf.domain.excluded_x,
        excluded_y=surf.domain.excluded_y,
    )


#: Uniform draw ranges used by the verification harness and property tests.
PARAM_RANGES = {"a": 2.0, "b": 2.0, "d": 2.0, "u0": 2.0, "v0": 2.0, "c": 1.0, "c1": 1.0}


def random_spec(family_type: int, variant: str | None, rng) -> FamilySpec:
    """Draw family parameters uniformly; d is pinned to 0 (forced by minimality)."""
    params = {}
    for name in ALLOWED_PARAMS[(family_type, variant)]:
        if name == "d":
            params[name] = 0.0
        else:
            r = PARAM_RANGES[name]
            params[name] = float(rng.uniform(-r, r))
    return FamilySpec(family_type, variant, params)
