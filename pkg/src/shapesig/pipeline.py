"""End-to-end extraction: image file -> mask -> contour -> descriptor."""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from os import PathLike

from PIL import Image

from . import contour as ct
from . import signatures as sg
from . import spectral as sp
from .signatures import KINDS


@dataclass(frozen=True)
class ExtractConfig:
    """Every knob that shapes a descriptor.

    ``coeffs = 0`` keeps the full descriptor (2N values for fsd, N/2 for
    the rest); a positive value keeps only that many leading values.
    """

    kind: str = "fsd"
    samples: int = 128
    af_step: int = 5
    tar_step: int = 1
    coeffs: int = 0
    threshold: float = 0.5
    orientation_normalize: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown descriptor kind {self.kind!r}; choose from {KINDS}")
        if self.samples < 4:
            raise ValueError(f"samples must be >= 4, got {self.samples}")
        if self.af_step < 1 or self.tar_step < 1:
            raise ValueError("af_step and tar_step must be >= 1")
        if self.coeffs < 0:
            raise ValueError(f"coeffs must be >= 0 (0 = full), got {self.coeffs}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must lie in [0, 1], got {self.threshold}")


def load_image(path: str | PathLike) -> np.ndarray:
    """Decode any raster Pillow understands to grayscale intensities in [0, 1]."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.float64)
    return arr / 255.0


def principal_angle(points: np.ndarray) -> float:
    """Angle of the contour's principal axis, mapped into [-pi/2, pi/2)."""
    pts = np.asarray(points, dtype=np.float64)
    cov = np.cov(pts.T)
    _, vecs = np.linalg.eigh(cov)
    major = vecs[:, -1]  # eigh sorts eigenvalues ascending
    angle = float(np.arctan2(major[1], major[0]))
    if angle >= np.pi / 2:
        angle -= np.pi
    elif angle < -np.pi / 2:
        angle += np.pi
    return angle


def rotate_about(points: np.ndarray, center: tuple[float, float], angle: float) -> np.ndarray:
    """Rotate points by ``angle`` radians (counter-clockwise) around ``center``."""
    pts = np.asarray(points, dtype=np.float64)
    c, s = np.cos(angle), np.sin(angle)
    rel = pts - np.asarray(center, dtype=np.float64)
    return np.column_stack(
        [c * rel[:, 0] - s * rel[:, 1], s * rel[:, 0] + c * rel[:, 1]]
    ) + np.asarray(center, dtype=np.float64)


def _crop_to_content(mask: np.ndarray) -> np.ndarray:
    # Pins the frame to the shape itself, so integer translations of the
    # input run through bit-identical arithmetic.
    rows, cols = np.nonzero(mask)
    return mask[rows.min() : rows.max() + 1, cols.min() : cols.max() + 1]


def shape_frame(
    mask: np.ndarray, samples: int = 128, orientation_normalize: bool = False
) -> tuple[np.ndarray, tuple[float, float]]:
    """Resampled CCW boundary plus region centroid for the dominant blob."""
    blob = _crop_to_content(ct.largest_component(mask))
    points = ct.resample(ct.trace_boundary(blob), samples)
    center = ct.centroid(blob)
    if orientation_normalize:
        points = rotate_about(points, center, -principal_angle(points))
    return points, center


def signature_values(
    kind: str,
    points: np.ndarray,
    center: tuple[float, float],
    params: sg.SignatureParams = sg.SignatureParams(),
) -> np.ndarray:
    """Raw signature sequence for one kind (real or complex)."""
    if kind == "fsd":
        return sg.fsd_signature(points, ct.bounding_rect(points))
    if kind == "pc":
        return sg.pc_signature(points, center)
    if kind == "cc":
        return sg.cc_signature(points, center)
    if kind == "af":
        return sg.af_signature(points, params.af_step)
    if kind == "arc":
        return sg.arc_signature(points, center, params.af_step)
    if kind == "tar":
        return sg.tar_signature(points, params.tar_step)
    if kind == "cld":
        return sg.cld_signature(points)
    raise ValueError(f"unknown descriptor kind {kind!r}")


def descriptor_values(
    kind: str,
    points: np.ndarray,
    center: tuple[float, float],
    params: sg.SignatureParams = sg.SignatureParams(),
    coeffs: int = 0,
) -> np.ndarray:
    """Final real feature vector for one kind."""
    sig = signature_values(kind, points, center, params)
    if kind == "fsd":
        values = sp.fsd_descriptor(sig)
    else:
        values = sp.fd_normalize(sp.dft(sig))
    if coeffs:
        values = values[:coeffs]
    return values


def extract_from_mask(mask: np.ndarray, config: ExtractConfig) -> np.ndarray:
    """Descriptor for an already-binarized mask."""
    points, center = shape_frame(mask, config.samples, config.orientation_normalize)
    params = sg.SignatureParams(af_step=config.af_step, tar_step=config.tar_step)
    return descriptor_values(config.kind, points, center, params, config.coeffs)


def extract_from_image(path: str | PathLike, config: ExtractConfig) -> np.ndarray:
    """Descriptor for an image file."""
    mask = ct.binarize(load_image(path), config.threshold)
    return extract_from_mask(mask, config)


def descriptor_dim(config: ExtractConfig) -> int:
    """Dimension the config produces: 2N for fsd, N/2 otherwise, capped by coeffs."""
    full = 2 * config.samples if config.kind == "fsd" else config.samples // 2
    return min(full, config.coeffs) if config.coeffs else full
