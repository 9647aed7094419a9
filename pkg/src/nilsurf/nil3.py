"""Algebra and differential geometry of the Heisenberg group.

The ambient space is R^3 with the twisted product

    (x, y, z) * (X, Y, Z) = (x + X, y + Y, z + Z + (xY - Xy)/2)

and the left-invariant metric dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2.
All geometric quantities are expressed in the orthonormal frame

    e1 = d/dx - (y/2) d/dz,  e2 = d/dy + (x/2) d/dz,  e3 = d/dz.

Every function here is pure arithmetic, so the fields of the value
types may hold either floats or numpy arrays (broadcasting applies).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NilsurfError


@dataclass(frozen=True)
class Point3:
    """A group element / ambient point (x, y, z)."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class CoordVector:
    """Tangent components in the coordinate basis d/dx, d/dy, d/dz."""

    dx: float
    dy: float
    dz: float


@dataclass(frozen=True)
class FrameVector:
    """Tangent components in the orthonormal frame {e1, e2, e3}."""

    a1: float
    a2: float
    a3: float

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3)

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3)

    def __neg__(self) -> "FrameVector":
        return FrameVector(-self.a1, -self.a2, -self.a3)

    def scaled(self, s: float) -> "FrameVector":
        return FrameVector(s * self.a1, s * self.a2, s * self.a3)


E1 = FrameVector(1.0, 0.0, 0.0)
E2 = FrameVector(0.0, 1.0, 0.0)
E3 = FrameVector(0.0, 0.0, 1.0)

FRAME_ZERO = FrameVector(0.0, 0.0, 0.0)


def group_mul(a: Point3, b: Point3) -> Point3:
    """Group product a * b."""
    return Point3(
        a.x + b.x,
        a.y + b.y,
        a.z + b.z + (a.x * b.y - b.x * a.y) / 2,
    )


def group_inverse(a: Point3) -> Point3:
    """Group inverse; group_mul(a, group_inverse(a)) is the identity."""
    return Point3(-a.x, -a.y, -a.z)


def apply_isometry(h: Point3, theta: float, p: Point3) -> Point3:
    """Rotate p about the z-axis by theta, then left-translate by h.

    Rotations about the z-axis and left translations generate the
    identity component of the isometry group.
    """
    c, s = np.cos(theta), np.sin(theta)
    rotated = Point3(c * p.x - s * p.y, s * p.x + c * p.y, p.z)
    return group_mul(h, rotated)


def rotate_coord_vector(theta: float, v: CoordVector) -> CoordVector:
    """Differential of the z-axis rotation (acts on dx, dy only)."""
    c, s = np.cos(theta), np.sin(theta)
    return CoordVector(c * v.dx - s * v.dy, s * v.dx + c * v.dy, v.dz)


def translate_coord_vector(h: Point3, v: CoordVector) -> CoordVector:
    """Differential of the left translation by h (point-independent)."""
    return CoordVector(v.dx, v.dy, v.dz + (h.x * v.dy - h.y * v.dx) / 2)


def frame_components(p: Point3, v: CoordVector) -> FrameVector:
    """Convert coordinate components at p to frame components.

    The e3 component is the value of the contact form
    dz + (y dx - x dy)/2 on v; the e1, e2 components equal dx, dy.
    """
    return FrameVector(v.dx, v.dy, v.dz + (p.y * v.dx - p.x * v.dy) / 2)


def coord_components(p: Point3, w: FrameVector) -> CoordVector:
    """Inverse of frame_components at the same base point."""
    return CoordVector(w.a1, w.a2, w.a3 - (p.y * w.a1 - p.x * w.a2) / 2)


def metric_dot(u: FrameVector, w: FrameVector) -> float:
    """Riemannian inner product; the frame is orthonormal."""
    return u.a1 * w.a1 + u.a2 * w.a2 + u.a3 * w.a3


def frame_cross(u: FrameVector, w: FrameVector) -> FrameVector:
    """Cross product in the oriented orthonormal frame."""
    return FrameVector(
        u.a2 * w.a3 - u.a3 * w.a2,
        u.a3 * w.a1 - u.a1 * w.a3,
        u.a1 * w.a2 - u.a2 * w.a1,
    )


# Levi-Civita connection on the frame: entry (i, j) is nabla_{e_i} e_j.
_CONNECTION = {
    (1, 1): FRAME_ZERO,
    (1, 2): FrameVector(0.0, 0.0, 0.5),
    (1, 3): FrameVector(0.0, -0.5, 0.0),
    (2, 1): FrameVector(0.0, 0.0, -0.5),
    (2, 2): FRAME_ZERO,
    (2, 3): FrameVector(0.5, 0.0, 0.0),
    (3, 1): FrameVector(0.0, -0.5, 0.0),
    (3, 2): FrameVector(0.5, 0.0, 0.0),
    (3, 3): FRAME_ZERO,
}


def connection_table(i: int, j: int) -> FrameVector:
    """nabla_{e_i} e_j; constant over the group."""
    try:
        return _CONNECTION[(i, j)]
    except KeyError:
        raise NilsurfError(f"frame indices must be in 1..3, got ({i}, {j})") from None


def covariant_derivative(x: FrameVector, y: FrameVector, dy: FrameVector) -> FrameVector:
    """nabla_X Y given the directional derivative dy of Y's components along X.

    Leibniz expansion over the connection table; the caller supplies dy
    because this module carries no differentiation scheme.
    """
    return FrameVector(
        dy.a1 + (x.a2 * y.a3 + x.a3 * y.a2) / 2,
        dy.a2 - (x.a1 * y.a3 + x.a3 * y.a1) / 2,
        dy.a3 + (x.a1 * y.a2 - x.a2 * y.a1) / 2,
    )


def curvature_tensor(x: FrameVector, y: FrameVector, z: FrameVector) -> FrameVector:
    """Riemann-Christoffel tensor R(X, Y)Z of the ambient space."""
    gyz = metric_dot(y, z)
    gxz = metric_dot(x, z)
    x3, y3, z3 = x.a3, y.a3, z.a3
    out = (y.scaled(gxz) - x.scaled(gyz)).scaled(0.75)
    out = out + x.scaled(y3 * z3) - y.scaled(x3 * z3)
    out = out + E3.scaled(x3 * gyz - y3 * gxz)
    return out


def sectional_curvature(u: FrameVector, v: FrameVector) -> float:
    """Sectional curvature of the plane spanned by an orthonormal pair."""
    return metric_dot(curvature_tensor(u, v, v), u)
