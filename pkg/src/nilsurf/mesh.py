"""Wavefront OBJ export of parametric surfaces."""

from __future__ import annotations

import numpy as np

from .errors import EmptyDomainError
from .surface import ParamSurface, SCAN_MARGIN


def export_obj(s: ParamSurface, nx: int, ny: int, path: str) -> dict:
    """Write a triangulated nx-by-ny grid of the surface as OBJ.

    Vertices are the ambient (x, y, z) coordinates in row-major grid order
    over the surface's domain; samples on excluded lines are skipped and
    the quads touching them are dropped. Returns counts for reporting.
    """
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be >= 2")
    if not s.domain.is_finite():
        raise EmptyDomainError("export needs a finite domain")
    xs = np.linspace(s.domain.x_min, s.domain.x_max, nx)
    ys = np.linspace(s.domain.y_min, s.domain.y_max, ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    keep = ~s.domain.near_excluded(gx, gy, margin=SCAN_MARGIN)
    if not np.any(keep):
        raise EmptyDomainError("all mesh samples fall on excluded lines")

    p = s.point(gx, gy)
    px = np.broadcast_to(np.asarray(p.x, dtype=float), gx.shape)
    py = np.broadcast_to(np.asarray(p.y, dtype=float), gx.shape)
    pz = np.broadcast_to(np.asarray(p.z, dtype=float), gx.shape)

    index = np.zeros(gx.shape, dtype=int)  # 1-based OBJ indices, 0 = skipped
    lines = []
    count = 0
    for i in range(nx):
        for j in range(ny):
            if keep[i, j]:
                count += 1
                index[i, j] = count
                lines.append(f"v {px[i, j]:.17g} {py[i, j]:.17g} {pz[i, j]:.17g}")
    n_faces = 0
    for i in range(nx - 1):
        for j in range(ny - 1):
            a, b = index[i, j], index[i + 1, j]
            c, d = index[i + 1, j + 1], index[i, j + 1]
            if a and b and c:
                lines.append(f"f {a} {b} {c}")
                n_faces += 1
            if a and c and d:
                lines.append(f"f {a} {c} {d}")
                n_faces += 1
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return {
        "vertices": count,
        "faces": n_faces,
        "skipped": int(nx * ny - count),
        "path": path,
    }
