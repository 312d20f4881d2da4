"""Per-point boundary signatures.

Seven signature kinds over a resampled closed contour of N points:

* ``fsd``  - four normalized distances to the sides of the bounding
  rectangle per point, interleaved into a real sequence of length 4N
* ``pc``   - centroid distance + j * radial angle (complex, length N)
* ``cc``   - centroid-relative coordinates as complex numbers (length N)
* ``af``   - direction angle of the step from s samples back (real)
* ``arc``  - centroid distance + j * direction angle (complex)
* ``tar``  - signed triangle area over a (t-s, t, t+s) window (real)
* ``cld``  - longest chord through the point perpendicular to the local
  tangent (real)

All functions are pure and operate on ``(N, 2)`` float arrays of (x, y)
points in the y-up frame.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass

from .contour import BoundingRect
from .errors import DegenerateShape, InvalidStep

KINDS = ("fsd", "pc", "cc", "af", "arc", "tar", "cld")

_PARALLEL_EPS = 1e-12
_ENDPOINT_TOL = 1e-9


@dataclass(frozen=True)
class SignatureParams:
    """Step widths for the windowed signatures."""

    af_step: int = 5
    tar_step: int = 1


def _check_step(step: int, n: int) -> None:
    if not 1 <= step < n / 2:
        raise InvalidStep(f"step must satisfy 1 <= step < N/2 = {n / 2}, got {step}")


def fsd_signature(points: np.ndarray, rect: BoundingRect) -> np.ndarray:
    """Normalized distances to the four bounding-rectangle sides, length 4N.

    Per point t, in order: (yMax - y)/V, (xMax - x)/H, (y - yMin)/V,
    (x - xMin)/H, with H and V the rectangle extents.  Every value lies in
    [0, 1]; the vertical pair sums to 1, as does the horizontal pair.
    """
    pts = np.asarray(points, dtype=np.float64)
    h_ext = rect.horizontal_extent
    v_ext = rect.vertical_extent
    if h_ext <= 0.0 or v_ext <= 0.0:
        raise DegenerateShape("bounding rectangle has a zero extent")
    x, y = pts[:, 0], pts[:, 1]
    quad = np.empty((len(pts), 4), dtype=np.float64)
    quad[:, 0] = (rect.y_max - y) / v_ext
    quad[:, 1] = (rect.x_max - x) / h_ext
    quad[:, 2] = (y - rect.y_min) / v_ext
    quad[:, 3] = (x - rect.x_min) / h_ext
    return quad.reshape(-1)


def pc_signature(points: np.ndarray, center: tuple[float, float]) -> np.ndarray:
    """Centroid distance as the real part, radial angle as the imaginary."""
    pts = np.asarray(points, dtype=np.float64)
    dx = pts[:, 0] - center[0]
    dy = pts[:, 1] - center[1]
    return np.hypot(dx, dy) + 1j * np.arctan2(dy, dx)


def cc_signature(points: np.ndarray, center: tuple[float, float]) -> np.ndarray:
    """Centroid-relative coordinates packed as x + jy."""
    pts = np.asarray(points, dtype=np.float64)
    return (pts[:, 0] - center[0]) + 1j * (pts[:, 1] - center[1])


def af_signature(points: np.ndarray, step: int = 5) -> np.ndarray:
    """Direction angle of p_t - p_{t-step}, radians in (-pi, pi]."""
    pts = np.asarray(points, dtype=np.float64)
    _check_step(step, len(pts))
    d = pts - np.roll(pts, step, axis=0)
    return np.arctan2(d[:, 1], d[:, 0])


def arc_signature(
    points: np.ndarray, center: tuple[float, float], step: int = 5
) -> np.ndarray:
    """Centroid distance as the real part, direction angle as the imaginary."""
    return pc_signature(points, center).real + 1j * af_signature(points, step)


def tar_signature(points: np.ndarray, step: int = 1) -> np.ndarray:
    """Signed area of the triangle (p_{t-s}, p_t, p_{t+s}) per point.

    Positive on counter-clockwise-convex vertices, negative on concave
    ones, zero for collinear triples.
    """
    pts = np.asarray(points, dtype=np.float64)
    _check_step(step, len(pts))
    u = pts - np.roll(pts, step, axis=0)
    v = np.roll(pts, -step, axis=0) - pts
    return 0.5 * (u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])


def cld_signature(points: np.ndarray) -> np.ndarray:
    """Longest chord through each point perpendicular to the local tangent.

    The tangent at p_t is the central difference p_{t+1} - p_{t-1}; the
    chord line runs along the normal in both directions and may end on any
    contour edge not incident to p_t.  Multiple hits keep the longest
    chord; points with no hit (or an undefined tangent) get 0.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    tangent = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    t_norm = np.hypot(tangent[:, 0], tangent[:, 1])
    defined = t_norm > _PARALLEL_EPS
    normal = np.zeros_like(tangent)
    normal[defined, 0] = -tangent[defined, 1] / t_norm[defined]
    normal[defined, 1] = tangent[defined, 0] / t_norm[defined]

    # Solve p_t + u * normal_t = a_j + v * e_j for every (point, edge) pair;
    # edge j runs from p_j to p_{j+1}.
    e = np.roll(pts, -1, axis=0) - pts
    rx = pts[None, :, 0] - pts[:, None, 0]
    ry = pts[None, :, 1] - pts[:, None, 1]
    det = e[None, :, 0] * normal[:, None, 1] - e[None, :, 1] * normal[:, None, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        u = (e[None, :, 0] * ry - e[None, :, 1] * rx) / det
        v = (normal[:, None, 0] * ry - normal[:, None, 1] * rx) / det

    valid = (
        (np.abs(det) > _PARALLEL_EPS)
        & (v >= -_ENDPOINT_TOL)
        & (v <= 1.0 + _ENDPOINT_TOL)
        & defined[:, None]
    )
    idx = np.arange(n)
    valid[idx, idx] = False
    valid[idx, (idx - 1) % n] = False
    return np.where(valid, np.abs(u), 0.0).max(axis=1)
