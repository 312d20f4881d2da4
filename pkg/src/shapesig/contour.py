"""Binary mask ingestion and closed-boundary extraction.

Masks are plain boolean ``(H, W)`` arrays in raster layout (row 0 at the
top).  Everything that emits coordinates converts to a mathematical y-up
frame: a pixel at ``(row, col)`` has center ``(x, y) = (col, H - 1 - row)``,
so "top" means largest y from here on.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass

from scipy import ndimage

from .errors import DegenerateShape, EmptyImage, EmptyShape, InvalidSampleCount

# Moore neighbourhood as (row, col) offsets, clockwise on screen starting
# north.  Ring-consecutive cells are 4-adjacent to each other, which is what
# guarantees every traced pixel touches background through an edge.
_MOORE = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))

_EIGHT = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class BoundingRect:
    """Axis-aligned rectangle covering a contour, y-up convention."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @property
    def horizontal_extent(self) -> float:
        return self.x_max - self.x_min

    @property
    def vertical_extent(self) -> float:
        return self.y_max - self.y_min


def binarize(image: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    """Threshold a grayscale raster into a boolean mask (True = shape).

    Integer rasters are rescaled by their dtype maximum so the threshold is
    always expressed in [0, 1].  A pixel is foreground iff its intensity is
    >= threshold.
    """
    image = np.asarray(image)
    if image.size == 0:
        raise EmptyImage("image has no pixels")
    if image.ndim != 2:
        raise ValueError(f"expected a 2-d grayscale raster, got shape {image.shape}")
    if np.issubdtype(image.dtype, np.integer):
        image = image / np.iinfo(image.dtype).max
    return image >= threshold


def largest_component(mask: np.ndarray) -> np.ndarray:
    """Keep only the biggest 8-connected blob of foreground pixels.

    Ties go to the component whose first pixel comes earliest in row-major
    scan order.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise EmptyShape("mask has no foreground pixels")
    labels, count = ndimage.label(mask, structure=_EIGHT)
    if count <= 1:
        return mask
    sizes = np.bincount(labels.ravel())
    sizes[0] = 0
    candidates = np.flatnonzero(sizes == sizes.max())
    winner = candidates[0]
    if len(candidates) > 1:
        flat = labels.ravel()
        firsts = [int(np.argmax(flat == lbl)) for lbl in candidates]
        winner = candidates[int(np.argmin(firsts))]
    return labels == winner


def _trace_pixels(mask: np.ndarray) -> list[tuple[int, int]]:
    """Moore-neighbour tracing in raster coordinates.

    Walks clockwise on screen from the topmost-then-leftmost foreground
    pixel.  Terminates via Jacob's criterion (re-entering the start pixel
    from the starting backtrack cell); a general (pixel, backtrack) cycle
    check backs that up so 1-pixel-wide appendages cannot loop forever.
    """
    h, w = mask.shape
    rows, cols = np.nonzero(mask)
    start = (int(rows[0]), int(cols[0]))
    start_back = (start[0], start[1] - 1)

    path = [start]
    seen = {(start, start_back): 0}
    p, back = start, start_back
    while True:
        k = _MOORE.index((back[0] - p[0], back[1] - p[1]))
        prev = back
        nxt = None
        for step in range(1, 9):
            d = _MOORE[(k + step) % 8]
            q = (p[0] + d[0], p[1] + d[1])
            if 0 <= q[0] < h and 0 <= q[1] < w and mask[q]:
                nxt = q
                break
            prev = q
        if nxt is None:  # isolated pixel
            return path
        if nxt == start and prev == start_back:
            return path
        state = (nxt, prev)
        if state in seen:
            return path[seen[state] :]
        seen[state] = len(path)
        path.append(nxt)
        p, back = nxt, prev


def trace_boundary(mask: np.ndarray) -> np.ndarray:
    """Trace the outer boundary of the single blob in ``mask``.

    Returns pixel centers as an ``(N, 2)`` float array of (x, y) points in
    the y-up frame, ordered counter-clockwise, starting at the
    topmost-then-leftmost boundary pixel.  Interior holes are ignored.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise EmptyShape("mask has no foreground pixels")
    path = _trace_pixels(mask)
    if len(path) < 3:
        raise DegenerateShape(
            f"component of {int(mask.sum())} pixel(s) has no usable boundary"
        )
    h = mask.shape[0]
    pts = np.array([(c, h - 1 - r) for r, c in path], dtype=np.float64)
    if shoelace_area(pts) < 0.0:
        pts = np.concatenate([pts[:1], pts[1:][::-1]])
    return pts


def shoelace_area(points: np.ndarray) -> float:
    """Signed polygon area; positive for counter-clockwise traversal."""
    pts = np.asarray(points, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def perimeter(points: np.ndarray) -> float:
    """Total length of the closed polyline through ``points``."""
    pts = np.asarray(points, dtype=np.float64)
    seg = np.roll(pts, -1, axis=0) - pts
    return float(np.hypot(seg[:, 0], seg[:, 1]).sum())


def resample(points: np.ndarray, n: int) -> np.ndarray:
    """Resample a closed contour to ``n`` points equally spaced by arc length.

    Point k sits at arc length k * P / n along the closed polyline (P the
    perimeter), with linear interpolation inside edges; point 0 is the
    original starting point.
    """
    if n < 4:
        raise InvalidSampleCount(f"need at least 4 samples, got {n}")
    pts = np.asarray(points, dtype=np.float64)
    closed = np.vstack([pts, pts[:1]])
    seg = np.diff(closed, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    arc = np.concatenate(([0.0], np.cumsum(seg_len)))
    total = arc[-1]
    if total <= 0.0:
        raise DegenerateShape("contour has zero perimeter")
    target = total * np.arange(n) / n
    idx = np.searchsorted(arc, target, side="right") - 1
    idx = np.clip(idx, 0, len(seg_len) - 1)
    denom = np.where(seg_len[idx] == 0.0, 1.0, seg_len[idx])
    u = (target - arc[idx]) / denom
    return closed[idx] + u[:, None] * seg[idx]


def bounding_rect(points: np.ndarray) -> BoundingRect:
    """Smallest axis-aligned rectangle covering every contour point."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        raise EmptyShape("contour has no points")
    return BoundingRect(
        x_min=float(pts[:, 0].min()),
        x_max=float(pts[:, 0].max()),
        y_min=float(pts[:, 1].min()),
        y_max=float(pts[:, 1].max()),
    )


def centroid(mask: np.ndarray) -> tuple[float, float]:
    """Region centroid: mean of foreground pixel centers, y-up frame."""
    mask = np.asarray(mask, dtype=bool)
    rows, cols = np.nonzero(mask)
    if len(rows) == 0:
        raise EmptyShape("mask has no foreground pixels")
    h = mask.shape[0]
    return float(cols.mean()), float((h - 1 - rows).mean())
