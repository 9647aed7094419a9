"""Closed-form profile functions for the translation-surface families.

A profile is a scalar function of one variable together with its exact
first and second derivatives. Log-radical antiderivatives of the form
ln(t + sqrt(1 + t^2)) are evaluated as asinh(t), and
ln(t + sqrt(q^2 + t^2)) as asinh(t/q) + ln(q), which is stable for
negative arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import EvalAtPoleError, MissingParamError

POLE_MARGIN = 1e-12


@dataclass(frozen=True)
class ProfileFn:
    """One profile: evaluation rule t -> (value, d1, d2) plus validity data."""

    kind: str
    params: dict
    _value: Callable
    _d1: Callable
    _d2: Callable
    domain: tuple = (-math.inf, math.inf)
    excluded: tuple = field(default=())

    def _check(self, t):
        for pole in self.excluded:
            if np.any(np.abs(np.asarray(t) - pole) <= POLE_MARGIN):
                raise EvalAtPoleError(f"{self.kind} profile evaluated at pole t={pole}")

    def value(self, t):
        self._check(t)
        return self._value(t)

    def d1(self, t):
        self._check(t)
        return self._d1(t)

    def d2(self, t):
        self._check(t)
        return self._d2(t)

    def eval2(self, t):
        """Value and both derivatives in one call."""
        self._check(t)
        return self._value(t), self._d1(t), self._d2(t)


_REQUIRED = {
    "affine": ("a", "b"),
    "poly2": ("a", "b", "c"),
    "quadratic": ("p2", "p1", "p0"),
    "sin": (),
    "asinh": (),
    "reciprocal": ("a", "b"),
    "sol_v": ("a", "c", "v0"),
    "sol_v2": ("a", "b", "c"),
    "sol_v3": ("a", "b", "c"),
    "sol_u5": ("a", "b", "c", "c1"),
    "sol_u6": ("a", "b", "c", "c1"),
}

_OPTIONAL = {
    "sin": {"amp": 1.0, "omega": 1.0},
    "asinh": {"amp": 1.0},
    "sol_u6": {"quad_sign": 1.0},
}


def profile_closed_form(kind: str, params: dict | None = None) -> ProfileFn:
    """Construct one of the named closed-form profiles.

    Raises MissingParamError if a required parameter is absent or an
    unknown parameter is supplied.
    """
    params = dict(params or {})
    if kind not in _REQUIRED:
        raise MissingParamError(f"unknown profile kind {kind!r}")
    required = _REQUIRED[kind]
    optional = _OPTIONAL.get(kind, {})
    missing = [name for name in required if name not in params]
    if missing:
        raise MissingParamError(f"{kind}: missing parameters {missing}")
    unknown = [name for name in params if name not in required and name not in optional]
    if unknown:
        raise MissingParamError(f"{kind}: unknown parameters {unknown}")
    full = {**optional, **params}
    builder = _BUILDERS[kind]
    return builder(full)


def _build_affine(p):
    a, b = p["a"], p["b"]
    return ProfileFn(
        "affine", p,
        lambda t: a * t + b,
        lambda t: a * np.ones_like(np.asarray(t, dtype=float)),
        lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )


def _build_poly2(p):
    a, b, c = p["a"], p["b"], p["c"]
    k = a / (2 * (1 + a * a))
    return ProfileFn(
        "poly2", p,
        lambda t: k * t * t + b * t + c,
        lambda t: 2 * k * t + b,
        lambda t: 2 * k * np.ones_like(np.asarray(t, dtype=float)),
    )


def _build_quadratic(p):
    p2, p1, p0 = p["p2"], p["p1"], p["p0"]
    return ProfileFn(
        "quadratic", p,
        lambda t: p2 * t * t + p1 * t + p0,
        lambda t: 2 * p2 * t + p1,
        lambda t: 2 * p2 * np.ones_like(np.asarray(t, dtype=float)),
    )


def _build_sin(p):
    amp, om = p["amp"], p["omega"]
    return ProfileFn(
        "sin", p,
        lambda t: amp * np.sin(om * t),
        lambda t: amp * om * np.cos(om * t),
        lambda t: -amp * om * om * np.sin(om * t),
    )


def _build_asinh(p):
    amp = p["amp"]
    return ProfileFn(
        "asinh", p,
        lambda t: amp * np.arcsinh(t),
        lambda t: amp / np.sqrt(1 + t * t),
        lambda t: -amp * t * (1 + t * t) ** -1.5,
    )


def _build_reciprocal(p):
    a, b = p["a"], p["b"]
    return ProfileFn(
        "reciprocal", p,
        lambda t: a / t + b,
        lambda t: -a / (t * t),
        lambda t: 2 * a / (t * t * t),
        excluded=(0.0,),
    )


def _build_sol_v(p):
    a, c, v0 = p["a"], p["c"], p["v0"]

    def value(t):
        s = a + t
        return c * (s * np.sqrt(1 + s * s) + np.arcsinh(s)) + v0

    def d1(t):
        s = a + t
        return 2 * c * np.sqrt(1 + s * s)

    def d2(t):
        s = a + t
        return 2 * c * s / np.sqrt(1 + s * s)

    return ProfileFn("sol_v", p, value, d1, d2)


def _w_parts(a, b, c, s):
    """w = (2a +/- t) v and its s-derivatives for the rational solutions."""
    root = np.sqrt(1 + s * s)
    w = b + (c / 2) * (s * root + np.arcsinh(s))
    dw_ds = c * root
    d2w_ds2 = c * s / root
    return w, dw_ds, d2w_ds2


def _build_sol_v2(p):
    a, b, c = p["a"], p["b"], p["c"]
    pole = -2 * a

    def parts(t):
        s = a + t
        q = 2 * a + t
        w, w1, w2 = _w_parts(a, b, c, s)  # d/dt == d/ds here
        return q, w, w1, w2

    def value(t):
        q, w, _, _ = parts(t)
        return w / q

    def d1(t):
        q, w, w1, _ = parts(t)
        return w1 / q - w / (q * q)

    def d2(t):
        q, w, w1, w2 = parts(t)
        return w2 / q - 2 * w1 / (q * q) + 2 * w / (q * q * q)

    return ProfileFn("sol_v2", p, value, d1, d2, excluded=(pole,))


def _build_sol_v3(p):
    a, b, c = p["a"], p["b"], p["c"]
    pole = 2 * a

    def parts(t):
        s = a - t
        q = 2 * a - t
        w, dw_ds, d2w_ds2 = _w_parts(a, b, c, s)
        return q, w, -dw_ds, d2w_ds2  # chain rule: ds/dt = -1

    def value(t):
        q, w, _, _ = parts(t)
        return w / q

    def d1(t):
        q, w, w1, _ = parts(t)
        # q' = -1, so v' = w'/q + w/q^2
        return w1 / q + w / (q * q)

    def d2(t):
        q, w, w1, w2 = parts(t)
        return w2 / q + 2 * w1 / (q * q) + 2 * w / (q * q * q)

    return ProfileFn("sol_v3", p, value, d1, d2, excluded=(pole,))


def _sol_u_builder(kind, p, quad_sign):
    a, b, c, c1 = p["a"], p["b"], p["c"], p["c1"]
    one_a2 = 1 + a * a
    q2 = 4 * one_a2
    q = math.sqrt(q2)

    def value(t):
        big = 2 * t + b
        root = np.sqrt(q2 + big * big)
        quad = quad_sign * (a * t * t + a * b * t + c) / (2 * one_a2)
        return quad + (c1 / 4) * big * root + c1 * one_a2 * (np.arcsinh(big / q) + math.log(q))

    def d1(t):
        big = 2 * t + b
        root = np.sqrt(q2 + big * big)
        return quad_sign * a * big / (2 * one_a2) + c1 * root

    def d2(t):
        big = 2 * t + b
        root = np.sqrt(q2 + big * big)
        return quad_sign * a / one_a2 + 2 * c1 * big / root

    return ProfileFn(kind, p, value, d1, d2)


def _build_sol_u5(p):
    return _sol_u_builder("sol_u5", p, -1.0)


def _build_sol_u6(p):
    return _sol_u_builder("sol_u6", p, p["quad_sign"])


_BUILDERS = {
    "affine": _build_affine,
    "poly2": _build_poly2,
    "quadratic": _build_quadratic,
    "sin": _build_sin,
    "asinh": _build_asinh,
    "reciprocal": _build_reciprocal,
    "sol_v": _build_sol_v,
    "sol_v2": _build_sol_v2,
    "sol_v3": _build_sol_v3,
    "sol_u5": _build_sol_u5,
    "sol_u6": _build_sol_u6,
}
