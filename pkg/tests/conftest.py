"""Shared helpers: random blob masks, star polygons, tiny on-disk datasets."""

import numpy as np
import pytest
from PIL import Image

from shapesig import ExtractConfig, FeatureIndex


def blob_mask(seed, size=64, n_disks=6, pad=4):
    """Random 8-connected blob built from a chain of overlapping disks.

    Consecutive disk centers are closer than the sum of radii, so the
    union is always one component with an irregular (asymmetric) outline.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size]
    mask = np.zeros((size, size), dtype=bool)
    cy, cx = size / 2.0, size / 2.0
    for _ in range(n_disks):
        r = rng.uniform(size / 12.0, size / 6.0)
        mask |= (yy - cy) ** 2 + (xx - cx) ** 2 <= r * r
        ang = rng.uniform(0.0, 2.0 * np.pi)
        hop = rng.uniform(0.3, 0.9) * r
        cy = np.clip(cy + hop * np.sin(ang), pad + r, size - pad - r)
        cx = np.clip(cx + hop * np.cos(ang), pad + r, size - pad - r)
    return mask


def star_polygon(seed, n_vertices=12, radius=10.0, center=(0.0, 0.0)):
    """Random star-shaped polygon (strictly positive radii, CCW order)."""
    rng = np.random.default_rng(seed)
    theta = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=n_vertices))
    # keep angular gaps away from zero so consecutive vertices stay distinct
    theta += np.linspace(0.0, 1e-3, n_vertices)
    radii = rng.uniform(0.35 * radius, radius, size=n_vertices)
    return np.column_stack(
        [center[0] + radii * np.cos(theta), center[1] + radii * np.sin(theta)]
    )


def circle_contour(n=128, radius=1.0, center=(0.0, 0.0)):
    theta = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack(
        [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)]
    )


def save_mask(path, mask):
    Image.fromarray((np.asarray(mask, bool) * 255).astype(np.uint8)).save(path)


def synth_index(ids, classes, vectors, kind="pc"):
    """FeatureIndex straight from vectors, config kept dimension-consistent."""
    vectors = np.asarray(vectors, dtype=np.float64)
    dim = vectors.shape[1]
    samples = dim // 2 if kind == "fsd" else 2 * dim
    config = ExtractConfig(kind=kind, samples=samples)
    return FeatureIndex(
        config=config,
        ids=np.array(ids, dtype=str),
        classes=np.array(classes, dtype=str),
        vectors=vectors,
    )


def write_blob_dataset(root, classes=("spot", "clump", "wisp"), per_class=4, size=64):
    """Tiny labeled dataset: each class is a family of nearby random blobs."""
    root.mkdir(parents=True, exist_ok=True)
    for c, name in enumerate(classes):
        for i in range(per_class):
            mask = blob_mask(1009 * (c + 1) + i, size=size)
            save_mask(root / f"{name}-{i + 1}.png", mask)
    return root


@pytest.fixture(scope="session")
def blob_dataset(tmp_path_factory):
    return write_blob_dataset(tmp_path_factory.mktemp("blobs"))
