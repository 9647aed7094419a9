"""Fundamental forms and curvature of parametric surfaces in the ambient group.

A ParamSurface is an immersion r(x, y) into the group together with a
differentiation capability: ANALYTIC surfaces supply exact jets, GENERIC
surfaces are differentiated by central differences. All evaluation rules
must accept numpy arrays for x and y (scalar floats work too).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import nil3
from .nil3 import (
    CoordVector,
    FrameVector,
    Point3,
    covariant_derivative,
    curvature_tensor,
    frame_components,
    frame_cross,
    metric_dot,
)
from .errors import (
    DegenerateMetricError,
    EmptyDomainError,
    OutOfDomainError,
    SingularPointError,
)

ANALYTIC = "analytic"
GENERIC = "generic"

#: Default step for the parameter-space derivatives of E, F, G feeding the
#: Brioschi formula. Fourth-order stencils at this step keep the rounding
#: noise of the second differences near 1e-9 relative.
BRIOSCHI_STEP = 1e-3

#: Margin kept between scan samples and excluded lines.
SCAN_MARGIN = 1e-3


@dataclass(frozen=True)
class Domain:
    """Rectangular validity domain with optional excluded coordinate lines."""

    x_min: float = -math.inf
    x_max: float = math.inf
    y_min: float = -math.inf
    y_max: float = math.inf
    excluded_x: tuple = ()
    excluded_y: tuple = ()

    def contains(self, x, y) -> bool:
        return bool(
            np.all((x >= self.x_min) & (x <= self.x_max))
            and np.all((y >= self.y_min) & (y <= self.y_max))
        )

    def near_excluded(self, x, y, margin: float = 0.0):
        """Elementwise mask: within margin of an excluded line."""
        mask = np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape, dtype=bool)
        for ex in self.excluded_x:
            mask |= np.abs(np.asarray(x) - ex) <= margin
        for ey in self.excluded_y:
            mask |= np.abs(np.asarray(y) - ey) <= margin
        return mask

    def is_finite(self) -> bool:
        return all(map(math.isfinite, (self.x_min, self.x_max, self.y_min, self.y_max)))


@dataclass(frozen=True)
class Jet2:
    """Surface point with first and second partials of the immersion."""

    p: Point3
    rx: CoordVector
    ry: CoordVector
    rxx: CoordVector
    rxy: CoordVector
    ryy: CoordVector
    x: float
    y: float


@dataclass(frozen=True)
class FundamentalData:
    """First-form coefficients, unnormalized normal and second-form products."""

    E: float
    F: float
    G: float
    nbar: FrameVector
    s11: float
    s12: float
    s22: float
    nabla11: FrameVector
    nabla12: FrameVector
    nabla22: FrameVector

    @property
    def det(self):
        return self.E * self.G - self.F * self.F


@dataclass(frozen=True)
class ParamSurface:
    """Immersion rule plus differentiation capability and validity domain."""

    point_fn: Callable
    jet_fn: Optional[Callable] = None
    domain: Domain = field(default_factory=Domain)
    name: str = ""

    @property
    def scheme(self) -> str:
        return ANALYTIC if self.jet_fn is not None else GENERIC

    def with_domain(self, domain: Domain) -> "ParamSurface":
        return replace(self, domain=domain)

    def point(self, x, y) -> Point3:
        return self.point_fn(x, y)


def _p_add(p: Point3, dx, dy, dz) -> Point3:
    return Point3(p.x + dx, p.y + dy, p.z + dz)


def _fd_jet(s: ParamSurface, x, y) -> Jet2:
    """Central-difference jet for GENERIC surfaces.

    First partials use step h = 1e-5 (1 + |x| + |y|); second partials use a
    five-point fourth-order stencil at step sqrt(h), which keeps both
    truncation and rounding below the 1e-6 scheme tolerance.
    """
    h = 1e-5 * (1 + np.abs(x) + np.abs(y))
    h = np.maximum(h, 1e-5)
    h2 = np.sqrt(h)

    def pt(dx, dy):
        p = s.point_fn(x + dx, y + dy)
        return np.asarray(p.x, dtype=float), np.asarray(p.y, dtype=float), np.asarray(p.z, dtype=float)

    p0 = pt(0.0, 0.0)

    def first(axis):
        def at(o):
            return pt(o, 0.0) if axis == 0 else pt(0.0, o)

        f2, f1, fm1, fm2 = at(2 * h), at(h), at(-h), at(-2 * h)
        return tuple((-f2[i] + 8 * f1[i] - 8 * fm1[i] + fm2[i]) / (12 * h) for i in range(3))

    def second(axis):
        def at(o):
            return pt(o, 0.0) if axis == 0 else pt(0.0, o)

        f2, f1, fm1, fm2 = at(2 * h2), at(h2), at(-h2), at(-2 * h2)
        return tuple(
            (-f2[i] + 16 * f1[i] - 30 * p0[i] + 16 * fm1[i] - fm2[i]) / (12 * h2 * h2)
            for i in range(3)
        )

    def cross(k):
        fpp, fpm, fmp, fmm = pt(k, k), pt(k, -k), pt(-k, k), pt(-k, -k)
        return tuple((fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4 * k * k) for i in range(3))

    rx = CoordVector(*first(0))
    ry = CoordVector(*first(1))
    rxx = CoordVector(*second(0))
    ryy = CoordVector(*second(1))
    c_full = cross(h2)
    c_half = cross(h2 / 2)
    # The two mixed-partial estimates must agree; disagreement flags a
    # pole or kink inside the stencil.
    for i in range(3):
        scale = 1.0 + np.abs(c_half[i])
        if np.any(np.abs(c_full[i] - c_half[i]) > 1e-2 * scale):
            raise SingularPointError(
                f"mixed-partial estimates disagree near (x={x}, y={y})"
            )
    rxy = CoordVector(*((4 * c_half[i] - c_full[i]) / 3 for i in range(3)))
    return Jet2(Point3(*p0), rx, ry, rxx, rxy, ryy, x, y)


def jet2(s: ParamSurface, x, y) -> Jet2:
    """Evaluate the 2-jet of the immersion at (x, y).

    Raises OutOfDomainError outside the validity rectangle and
    SingularPointError on an excluded line or where r_x is parallel to r_y.
    """
    if not s.domain.contains(x, y):
        raise OutOfDomainError(f"({x}, {y}) outside validity domain")
    if np.any(s.domain.near_excluded(x, y, margin=1e-12)):
        raise SingularPointError(f"({x}, {y}) lies on an excluded line")
    if s.jet_fn is not None:
        jet = s.jet_fn(x, y)
    else:
        jet = _fd_jet(s, x, y)
    a = frame_components(jet.p, jet.rx)
    b = frame_components(jet.p, jet.ry)
    n2 = metric_dot(frame_cross(a, b), frame_cross(a, b))
    scale = metric_dot(a, a) * metric_dot(b, b)
    if np.any(n2 <= 1e-24 * np.maximum(scale, 1.0)):
        raise SingularPointError(f"immersion degenerates at ({x}, {y}): r_x || r_y")
    return jet


def fundamental_data(j: Jet2, check: bool = True) -> FundamentalData:
    """First fundamental form, unnormalized normal and second-form products.

    The ambient covariant derivatives of r_x and r_y are obtained by the
    Leibniz rule on frame components; the only non-obvious ingredient is
    the derivative of the frame change along the surface, which
    contributes (rx.dy*ry.dx - rx.dx*ry.dy)/2 to the e3 part of the mixed
    term and cancels identically in the repeated-direction terms.
    """
    p = j.p
    a = frame_components(p, j.rx)
    b = frame_components(p, j.ry)
    dx_a = frame_components(p, j.rxx)
    mixed_extra = (j.rx.dy * j.ry.dx - j.rx.dx * j.ry.dy) / 2
    dx_b = frame_components(p, j.rxy) + nil3.E3.scaled(mixed_extra)
    dy_b = frame_components(p, j.ryy)
    nab11 = covariant_derivative(a, a, dx_a)
    nab12 = covariant_derivative(a, b, dx_b)
    nab22 = covariant_derivative(b, b, dy_b)
    nbar = frame_cross(a, b)
    e = metric_dot(a, a)
    f = metric_dot(a, b)
    g = metric_dot(b, b)
    if check and np.any(e * g - f * f <= 0.0):
        raise DegenerateMetricError("EG - F^2 <= 0: not an immersed Riemannian point")
    return FundamentalData(
        E=e,
        F=f,
        G=g,
        nbar=nbar,
        s11=metric_dot(nbar, nab11),
        s12=metric_dot(nbar, nab12),
        s22=metric_dot(nbar, nab22),
        nabla11=nab11,
        nabla12=nab12,
        nabla22=nab22,
    )


def mean_curvature(j: Jet2) -> float:
    """Mean curvature with respect to the unit normal N = Nbar/|Nbar|."""
    fd = fundamental_data(j)
    num = fd.G * fd.s11 - 2 * fd.F * fd.s12 + fd.E * fd.s22
    return num / (2 * fd.det ** 1.5)


def minimality_residual(j: Jet2) -> float:
    """G<N,D11> - 2F<N,D12> + E<N,D22> with the unnormalized normal.

    Equals 2 H (EG - F^2)^{3/2}; vanishing is equivalent to minimality.
    """
    fd = fundamental_data(j)
    return fd.G * fd.s11 - 2 * fd.F * fd.s12 + fd.E * fd.s22


def ambient_tangent_curvature(j: Jet2) -> float:
    """Sectional curvature of the ambient space along the tangent plane."""
    a = frame_components(j.p, j.rx)
    b = frame_components(j.p, j.ry)
    e = metric_dot(a, a)
    f = metric_dot(a, b)
    u = a.scaled(1.0 / np.sqrt(e))
    b_perp = b - a.scaled(f / e)
    norm = np.sqrt(metric_dot(b_perp, b_perp))
    v = b_perp.scaled(1.0 / norm)
    return metric_dot(curvature_tensor(u, v, v), u)


def _efg(s: ParamSurface, x, y):
    """First-form coefficients as arrays, bypassing domain checks."""
    jet = s.jet_fn(x, y) if s.jet_fn is not None else _fd_jet(s, x, y)
    a = frame_components(jet.p, jet.rx)
    b = frame_components(jet.p, jet.ry)
    return metric_dot(a, a), metric_dot(a, b), metric_dot(b, b)


def _brioschi(s: ParamSurface, x, y, h):
    """Intrinsic curvature from E, F, G by the Brioschi determinant formula.

    Fourth-order central stencils at step h; the mixed derivative uses
    Richardson extrapolation of the four-point cross stencil.
    """
    e0, f0, g0 = _efg(s, x, y)

    def d1(axis, idx):
        vals = []
        for o in (2 * h, h, -h, -2 * h):
            pt = _efg(s, x + o, y) if axis == 0 else _efg(s, x, y + o)
            vals.append(pt[idx])
        return (-vals[0] + 8 * vals[1] - 8 * vals[2] + vals[3]) / (12 * h)

    def d2(axis, idx):
        vals = []
        for o in (2 * h, h, -h, -2 * h):
            pt = _efg(s, x + o, y) if axis == 0 else _efg(s, x, y + o)
            vals.append(pt[idx])
        f0_ = (e0, f0, g0)[idx]
        return (-vals[0] + 16 * vals[1] - 30 * f0_ + 16 * vals[2] - vals[3]) / (12 * h * h)

    def cross(idx, k):
        fpp = _efg(s, x + k, y + k)[idx]
        fpm = _efg(s, x + k, y - k)[idx]
        fmp = _efg(s, x - k, y + k)[idx]
        fmm = _efg(s, x - k, y - k)[idx]
        return (fpp - fpm - fmp + fmm) / (4 * k * k)

    ex, gx, fx = d1(0, 0), d1(0, 2), d1(0, 1)
    ey, gy, fy = d1(1, 0), d1(1, 2), d1(1, 1)
    eyy = d2(1, 0)
    gxx = d2(0, 2)
    fxy = (4 * cross(1, h / 2) - cross(1, h)) / 3

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    m1 = [
        [-0.5 * eyy + fxy - 0.5 * gxx, 0.5 * ex, fx - 0.5 * ey],
        [fy - 0.5 * gx, e0, f0],
        [0.5 * gy, f0, g0],
    ]
    m2 = [
        [np.zeros_like(np.asarray(e0, dtype=float)), 0.5 * ey, 0.5 * gx],
        [0.5 * ey, e0, f0],
        [0.5 * gx, f0, g0],
    ]
    det = e0 * g0 - f0 * f0
    return (det3(m1) - det3(m2)) / (det * det)


def _brioschi_step(s: ParamSurface, x, y):
    """Brioschi stencil step, shrunk so the stencil stays off excluded lines."""
    h = BRIOSCHI_STEP * np.ones(np.broadcast(np.asarray(x), np.asarray(y)).shape)
    for ex in s.domain.excluded_x:
        h = np.minimum(h, np.abs(np.asarray(x, dtype=float) - ex) / 4)
    for ey in s.domain.excluded_y:
        h = np.minimum(h, np.abs(np.asarray(y, dtype=float) - ey) / 4)
    return np.maximum(h, 1e-5)


def gaussian_curvature(s: ParamSurface, x, y):
    """Gaussian curvature by two routes: Gauss equation and Brioschi.

    K_gauss adds the determinant of the shape operator to the ambient
    sectional curvature of the tangent plane; K_brioschi is intrinsic,
    computed from parameter derivatives of E, F, G. The Gauss equation
    makes the two agree on any immersed surface.
    """
    j = jet2(s, x, y)
    fd = fundamental_data(j)
    kbar = ambient_tangent_curvature(j)
    k_gauss = kbar + (fd.s11 * fd.s22 - fd.s12 * fd.s12) / (fd.det * fd.det)
    h = _brioschi_step(s, x, y)
    k_brioschi = _brioschi(s, x, y, h)
    return k_gauss, k_brioschi


@dataclass
class ScanReport:
    """Aggregated |H|, residual and curvature statistics over a grid."""

    nx: int
    ny: int
    n_samples: int
    max_abs_h: float
    mean_abs_h: float
    max_abs_residual: float
    max_gauss_defect: float
    k_values: list
    skipped: list
    xs: np.ndarray = field(repr=False, default=None)
    ys: np.ndarray = field(repr=False, default=None)
    h_grid: np.ndarray = field(repr=False, default=None)
    residual_grid: np.ndarray = field(repr=False, default=None)
    k_gauss_grid: np.ndarray = field(repr=False, default=None)
    k_brioschi_grid: np.ndarray = field(repr=False, default=None)

    def to_json_dict(self) -> dict:
        return {
            "nx": self.nx,
            "ny": self.ny,
            "n_samples": self.n_samples,
            "max_abs_h": self.max_abs_h,
            "mean_abs_h": self.mean_abs_h,
            "max_abs_residual": self.max_abs_residual,
            "max_gauss_defect": self.max_gauss_defect,
            "k_values": list(self.k_values),
            "skipped": [list(p) for p in self.skipped],
        }

    def rows(self):
        """Per-sample rows for CSV streaming."""
        flat = zip(
            self.xs.ravel(),
            self.ys.ravel(),
            self.h_grid.ravel(),
            self.residual_grid.ravel(),
            self.k_gauss_grid.ravel(),
            self.k_brioschi_grid.ravel(),
        )
        for x, y, h, res, kg, kb in flat:
            yield {
                "x": x,
                "y": y,
                "H": h,
                "residual": res,
                "K_gauss": kg,
                "K_brioschi": kb,
                "skipped": int(not np.isfinite(h)),
            }


def grid_scan(
    s: ParamSurface,
    nx: int,
    ny: int,
    include_curvature: bool = True,
    margin: float = SCAN_MARGIN,
) -> ScanReport:
    """Evaluate H, residual and (optionally) curvature on a uniform grid.

    Samples within `margin` of an excluded line are skipped and listed in
    the report. Raises EmptyDomainError if nothing remains.
    """
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be >= 2")
    if not s.domain.is_finite():
        raise EmptyDomainError("grid_scan needs a finite validity domain")
    xs = np.linspace(s.domain.x_min, s.domain.x_max, nx)
    ys = np.linspace(s.domain.y_min, s.domain.y_max, ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    excluded = s.domain.near_excluded(gx, gy, margin=margin)
    valid = ~excluded
    if not np.any(valid):
        raise EmptyDomainError("all grid samples fall on excluded lines")

    xv = gx[valid]
    yv = gy[valid]
    jet = s.jet_fn(xv, yv) if s.jet_fn is not None else _fd_jet(s, xv, yv)
    fd = fundamental_data(jet, check=False)
    det = fd.det
    ok = det > 0.0
    num = fd.G * fd.s11 - 2 * fd.F * fd.s12 + fd.E * fd.s22
    h_vals = np.where(ok, num / np.where(ok, 2 * det ** 1.5, 1.0), np.nan)
    res_vals = np.where(ok, num, np.nan)

    h_grid = np.full(gx.shape, np.nan)
    res_grid = np.full(gx.shape, np.nan)
    h_grid[valid] = h_vals
    res_grid[valid] = res_vals

    kg_grid = np.full(gx.shape, np.nan)
    kb_grid = np.full(gx.shape, np.nan)
    if include_curvature:
        kbar = ambient_tangent_curvature(jet)
        kg_vals = np.where(
            ok, kbar + (fd.s11 * fd.s22 - fd.s12 * fd.s12) / np.where(ok, det * det, 1.0), np.nan
        )
        hstep = _brioschi_step(s, xv, yv)
        kb_vals = np.where(ok, _brioschi(s, xv, yv, hstep), np.nan)
        kg_grid[valid] = kg_vals
        kb_grid[valid] = kb_vals

    finite = np.isfinite(h_grid)
    if not np.any(finite):
        raise EmptyDomainError("no regular samples in the scan")
    abs_h = np.abs(h_grid[finite])
    abs_res = np.abs(res_grid[finite])
    if include_curvature:
        defect = np.abs(kg_grid[finite] - kb_grid[finite])
        max_defect = float(np.max(defect))
        k_values = [float(v) for v in kg_grid[finite]]
    else:
        max_defect = math.nan
        k_values = []
    skipped_mask = ~finite
    skipped = [
        (float(a), float(b)) for a, b in zip(gx[skipped_mask], gy[skipped_mask])
    ]
    return ScanReport(
        nx=nx,
        ny=ny,
        n_samples=int(np.count_nonzero(finite)),
        max_abs_h=float(np.max(abs_h)),
        mean_abs_h=float(np.mean(abs_h)),
        max_abs_residual=float(np.max(abs_res)),
        max_gauss_defect=max_defect,
        k_values=k_values,
        skipped=skipped,
        xs=gx,
        ys=gy,
        h_grid=h_grid,
        residual_grid=res_grid,
        k_gauss_grid=kg_grid,
        k_brioschi_grid=kb_grid,
    )


def wrap_isometry(s: ParamSurface, h: Point3, theta: float) -> ParamSurface:
    """Compose the surface with the isometry p -> h * R_theta(p).

    The isometry is affine in coordinates, so analytic jets transform by
    the constant linear differential and stay exact.
    """

    def push(v: CoordVector) -> CoordVector:
        return nil3.translate_coord_vector(h, nil3.rotate_coord_vector(theta, v))

    def point(x, y):
        return nil3.apply_isometry(h, theta, s.point_fn(x, y))

    jet_fn = None
    if s.jet_fn is not None:

        def jet_fn(x, y):
            j = s.jet_fn(x, y)
            return Jet2(
                nil3.apply_isometry(h, theta, j.p),
                push(j.rx),
                push(j.ry),
                push(j.rxx),
                push(j.rxy),
                push(j.ryy),
                x,
                y,
            )

    return ParamSurface(point, jet_fn, s.domain, name=s.name + "+isometry")
