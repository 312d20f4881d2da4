"""Discrete Fourier transform and descriptor normalization.

The forward transform carries a 1/M factor:

    a_n = (1/M) * sum_t r(t) * exp(-j 2 pi n t / M)

Descriptors keep only coefficient magnitudes, which makes them blind to
circular shifts of the input sequence (the starting-point / rotation
normalization mechanism).
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateDescriptor

_DC_EPS = 1e-12


def dft(signature: np.ndarray) -> np.ndarray:
    """Forward DFT with 1/M scaling; real inputs embed with zero imaginary."""
    x = np.asarray(signature)
    if x.ndim != 1:
        raise ValueError(f"signature must be 1-d, got shape {x.shape}")
    if len(x) < 4:
        raise ValueError(f"signature too short for a spectrum: {len(x)}")
    return np.fft.fft(x) / len(x)


def fd_normalize(spectrum: np.ndarray) -> np.ndarray:
    """Magnitude ratios |a_n| / |a_0| for n = 1 .. M/2.

    Used for all centroid/angle/area signatures; dividing by the DC
    magnitude removes scale.  Raises DegenerateDescriptor when |a_0| is too
    small to divide by (near-zero-mean signal); callers decide whether to
    drop the image.
    """
    a = np.asarray(spectrum)
    mags = np.abs(a)
    if mags[0] < _DC_EPS:
        raise DegenerateDescriptor(
            f"DC magnitude {mags[0]:.3e} below {_DC_EPS:.0e}; cannot normalize"
        )
    return mags[1 : len(a) // 2 + 1] / mags[0]


def fsd_descriptor(signature: np.ndarray) -> np.ndarray:
    """Spectrum magnitudes |a_1| .. |a_{2N}| of a length-4N side-distance signature.

    No DC division: the signature is already scale-normalized by the
    rectangle extents, so plain magnitudes suffice.
    """
    a = dft(signature)
    return np.abs(a[1 : len(a) // 2 + 1])
