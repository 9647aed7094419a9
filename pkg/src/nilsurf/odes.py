"""Independent verification layer for the family minimality ODEs.

Evaluates the derived per-type ordinary differential equations pointwise
(the symbolic route, cross-checking the geometric mean-curvature route)
and re-derives the closed-form profiles by fourth-order Runge-Kutta
integration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainMismatchError,
    PoleInSpanError,
    StepTooLargeError,
)
from .profiles import ProfileFn
from .surface import minimality_residual
from . import families


@dataclass(frozen=True)
class TCoeffs:
    """Coefficients of the type-2/3 equation T0 u'' + T1 u' + T2 u'^2 + T3 u'^3 + T4."""

    T0: float
    T1: float
    T2: float
    T3: float
    T4: float


@dataclass(frozen=True)
class PCoeffs:
    """Coefficients of the type-5 equation; P1 depends on x, P2..P4 on y only."""

    P1: float
    P2: float
    P3: float
    P4: float


def t_coefficients(v: ProfileFn, y) -> TCoeffs:
    v0, v1, v2 = v.eval2(y)
    return TCoeffs(
        T0=4 + 4 * v1 * v1 + (v0 - y * v1) ** 2,
        T1=2 * (v0 - y * v1 - 2 * (1 + 2 * y * y) * v2),
        T2=-10 * y * v2,
        T3=-4 * v2,
        T4=2 * y * v0 - 2 * (2 + y * y) * v1 - 2 * y * (1 + y * y) * v2,
    )


def p_coefficients(v: ProfileFn, x, y) -> PCoeffs:
    v0, v1, v2 = v.eval2(y)
    return PCoeffs(
        P1=2 * x + v0 - y * v1,
        P2=2 * v1,
        P3=2 * v2,
        P4=2 * y * v2,
    )


def raw_residual_type2(u: ProfileFn, v: ProfileFn, x, y):
    """The uncollected type-2 minimality display, implemented verbatim.

    Identical (as a polynomial identity) to the T-form; kept as a guard
    against transcription errors in either.
    """
    _, u1, u2 = u.eval2(x)
    v0, v1, v2 = v.eval2(y)
    return (
        2 * v0 * (y + u1 - y * v1 * u2)
        - 2 * v1 * (2 + y * y + y * u1)
        - 2 * v2 * (y + 2 * u1) * (1 + y * y + 2 * y * u1 + u1 * u1)
        + u2 * (4 + v0 * v0 + (4 + y * y) * v1 * v1)
    )


def raw_residual_type5(u: ProfileFn, v: ProfileFn, x, y):
    """The uncollected type-5 minimality display, implemented verbatim."""
    _, u1, u2 = u.eval2(x)
    v0, v1, v2 = v.eval2(y)
    return (
        u2 * (-2 * y * (v0 + 2 * x) * v1 + (y * y + 4) * v1 * v1 + (v0 + 2 * x) ** 2 + 4)
        - 4 * u1 ** 3 * v2
        + 2 * y * u1 * u1 * v2
        - 2 * u1 * (2 * (v2 + x) - y * v1 + v0)
        + 2 * (y * v2 + 2 * v1)
    )


def p_form_residual(u: ProfileFn, v: ProfileFn, x, y, zero_order_sign: float = 1.0):
    """Collected type-5 equation; zero_order_sign=-1 gives the conjectured type-6 form."""
    _, u1, u2 = u.eval2(x)
    p = p_coefficients(v, x, y)
    return (
        (4 + p.P1 * p.P1 + p.P2 * p.P2) * u2
        - 2 * (p.P1 + p.P3) * u1
        + p.P4 * u1 * u1
        - 2 * p.P3 * u1 ** 3
        + zero_order_sign * (2 * p.P2 + p.P4)
    )


def t_form_residual(u: ProfileFn, v: ProfileFn, x, y, family_type: int = 2):
    """Collected type-2 equation; type 3 flips the signs of T2 and T4."""
    _, u1, u2 = u.eval2(x)
    t = t_coefficients(v, y)
    if family_type == 2:
        return t.T0 * u2 + t.T1 * u1 + t.T2 * u1 * u1 + t.T3 * u1 ** 3 + t.T4
    return t.T0 * u2 + t.T1 * u1 - t.T2 * u1 * u1 + t.T3 * u1 ** 3 - t.T4


def _geometric_residual(family_type: int, u: ProfileFn, v: ProfileFn, x, y):
    surf = families.surface_from_profiles(family_type, u, v)
    return minimality_residual(surf.jet_fn(x, y))


def ode_residual(family_type: int, u: ProfileFn, v: ProfileFn, x, y):
    """Left-hand side of the displayed minimality ODE for the given type.

    Type 6 has no displayed equation; its residual is the geometric
    minimality residual of the type-6 parametrization (the conjectured
    sign-flipped P-form is available as p_form_residual with
    zero_order_sign=-1, documented as a conjecture only).
    """
    if family_type == 1:
        _, u1, u2 = u.eval2(x)
        _, v1, v2 = v.eval2(y)
        return u2 * (1 + v1 * v1) - (u1 + y) * v1 + v2 * (1 + (u1 + y) ** 2)
    if family_type == 4:
        _, u1, u2 = u.eval2(x)
        _, v1, v2 = v.eval2(y)
        return (1 + u1 * u1) * v2 + (v1 - x) * u1 + (1 + (v1 - x) ** 2) * u2
    if family_type in (2, 3):
        return t_form_residual(u, v, x, y, family_type=family_type)
    if family_type == 5:
        return p_form_residual(u, v, x, y)
    if family_type == 6:
        return _geometric_residual(6, u, v, x, y)
    raise ValueError(f"family type must be 1..6, got {family_type}")


@dataclass(frozen=True)
class OdeSolution:
    """RK4 trajectory of a second-order profile ODE."""

    ts: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    method: str
    step: float


def _rhs(kind: str, params: dict):
    """Second derivative as a function of (t, value, slope)."""
    a = float(params.get("a", 0.0))
    b = float(params.get("b", 0.0))
    if kind in ("type1", "w_type2"):
        # second derivative = (a + t) * slope / (1 + (a + t)^2)
        def f(t, _val, slope):
            s = a + t
            return s * slope / (1 + s * s)

        return f
    if kind == "w_type3":
        def f(t, _val, slope):
            s = a - t
            return -s * slope / (1 + s * s)

        return f
    if kind in ("type5", "type6"):
        sign = 1.0 if kind == "type5" else -1.0

        def f(t, _val, slope):
            big = 2 * t + b
            return (2 * big * slope - sign * 4 * a) / (4 + 4 * a * a + big * big)

        return f
    raise ValueError(f"unknown ODE kind {kind!r}")


def integrate_profile(
    kind: str,
    params: dict,
    t0: float,
    y0: tuple[float, float],
    span: tuple[float, float],
    step: float,
) -> OdeSolution:
    """Classical RK4 for the second-order profile ODE, as a first-order system.

    Integrates forward from t0 to span[1] and backward to span[0]; the
    grid is the union, strictly monotone. Global error is O(step^4).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    lo, hi = span
    if not (lo <= t0 <= hi):
        raise PoleInSpanError(f"t0={t0} outside span {span}")
    for pole in params.get("poles", ()):
        if lo <= pole <= hi:
            raise PoleInSpanError(f"pole at t={pole} inside span {span}")
    f = _rhs(kind, params)

    def march(t_start, t_end, state, h):
        n = max(1, int(round(abs(t_end - t_start) / h)))
        dt = (t_end - t_start) / n
        ts = [t_start]
        vals = [state[0]]
        slopes = [state[1]]
        val, slope = state
        t = t_start
        for _ in range(n):
            k1v, k1s = slope, f(t, val, slope)
            k2v, k2s = slope + dt / 2 * k1s, f(t + dt / 2, val + dt / 2 * k1v, slope + dt / 2 * k1s)
            k3v, k3s = slope + dt / 2 * k2s, f(t + dt / 2, val + dt / 2 * k2v, slope + dt / 2 * k2s)
            k4v, k4s = slope + dt * k3s, f(t + dt, val + dt * k3v, slope + dt * k3s)
            val = val + dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
            slope = slope + dt / 6 * (k1s + 2 * k2s + 2 * k3s + k4s)
            t = t_start + (len(ts)) * dt
            if not (np.isfinite(val) and np.isfinite(slope)):
                raise StepTooLargeError(f"non-finite state at t={t}")
            ts.append(t)
            vals.append(val)
            slopes.append(slope)
        return ts, vals, slopes

    ts_f, vals_f, slopes_f = march(t0, hi, y0, step)
    if lo < t0:
        ts_b, vals_b, slopes_b = march(t0, lo, y0, step)
        ts = list(reversed(ts_b[1:])) + ts_f
        vals = list(reversed(vals_b[1:])) + vals_f
        slopes = list(reversed(slopes_b[1:])) + slopes_f
    else:
        ts, vals, slopes = ts_f, vals_f, slopes_f
    return OdeSolution(
        ts=np.asarray(ts),
        values=np.asarray(vals),
        slopes=np.asarray(slopes),
        method="rk4",
        step=step,
    )


def compare_profiles(numeric: OdeSolution, closed, transform=None) -> float:
    """Max absolute deviation of the trajectory from a closed-form profile.

    `closed` is a ProfileFn or a plain callable; `transform` optionally
    maps (t, numeric_value) to the quantity the closed form describes
    (used for the w-substituted solutions).
    """
    ts = numeric.ts
    vals = numeric.values
    if transform is not None:
        vals = transform(ts, vals)
    if isinstance(closed, ProfileFn):
        lo, hi = closed.domain
        if np.any(ts < lo) or np.any(ts > hi):
            raise DomainMismatchError("grid leaves the closed form's interval")
        for pole in closed.excluded:
            if np.any(np.abs(ts - pole) < 1e-12):
                raise DomainMismatchError(f"grid hits pole t={pole}")
        ref = closed.value(ts)
    else:
        ref = closed(ts)
    return float(np.max(np.abs(vals - ref)))


def closed_form_oracle(
    sol: str,
    params: dict,
    span: tuple[float, float] | None = None,
    step: float = 1e-3,
) -> tuple[float, dict]:
    """Integrate the ODE behind one closed-form solution and compare.

    Initial data is read from the closed form at the span start, so the
    run certifies the solution itself rather than initial-value agreement.
    For the rational solutions the substitution w = (2a +/- t) v is
    integrated and mapped back. Returns (max_error, run_info).
    """
    from .profiles import profile_closed_form

    a = float(params.get("a", 0.0))
    if sol == "sol_v":
        closed = profile_closed_form("sol_v", params)
        span = span or (0.0, 2.0)
        lo = span[0]
        numeric = integrate_profile(
            "type1", {"a": a}, lo, (float(closed.value(lo)), float(closed.d1(lo))), span, step
        )
        err = compare_profiles(numeric, closed)
        kind = "type1"
    elif sol == "sol_v2":
        closed = profile_closed_form("sol_v2", params)
        span = span or (-2 * a + 0.5, -2 * a + 2.5)
        lo = span[0]
        w0 = (2 * a + lo) * float(closed.value(lo))
        w1 = float(closed.value(lo)) + (2 * a + lo) * float(closed.d1(lo))
        numeric = integrate_profile(
            "w_type2", {"a": a, "poles": closed.excluded}, lo, (w0, w1), span, step
        )
        err = compare_profiles(numeric, closed, transform=lambda t, w: w / (2 * a + t))
        kind = "w_type2"
    elif sol == "sol_v3":
        closed = profile_closed_form("sol_v3", params)
        span = span or (2 * a + 0.5, 2 * a + 2.5)
        lo = span[0]
        w0 = (2 * a - lo) * float(closed.value(lo))
        w1 = -float(closed.value(lo)) + (2 * a - lo) * float(closed.d1(lo))
        numeric = integrate_profile(
            "w_type3", {"a": a, "poles": closed.excluded}, lo, (w0, w1), span, step
        )
        err = compare_profiles(numeric, closed, transform=lambda t, w: w / (2 * a - t))
        kind = "w_type3"
    elif sol in ("sol_u5", "sol_u6"):
        closed = profile_closed_form(sol, params)
        span = span or (-1.0, 1.0)
        lo = span[0]
        kind = "type5" if sol == "sol_u5" else "type6"
        numeric = integrate_profile(
            kind,
            {"a": a, "b": float(params.get("b", 0.0))},
            lo,
            (float(closed.value(lo)), float(closed.d1(lo))),
            span,
            step,
        )
        err = compare_profiles(numeric, closed)
    else:
        raise ValueError(f"unknown closed-form solution {sol!r}")
    return err, {"ode": kind, "solution": sol, "span": list(span), "step": step}


def oracle_record(
    kind: str, params: dict, span: tuple[float, float], step: float, max_error: float, tol: float
) -> dict:
    """JSON record for one oracle run."""
    return {
        "ode": kind,
        "params": {k: v for k, v in params.items() if k != "poles"},
        "span": list(span),
        "step": step,
        "max_error": max_error,
        "pass": bool(max_error < tol),
    }
