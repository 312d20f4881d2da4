#!/usr/bin/env python3
"""Generate a synthetic shape corpus with the benchmark's directory layout.

Every class is a random radial Fourier profile; instances perturb the
profile, rotate it, scale it, and shift it before rasterization.  The
output is a flat directory of binary PNGs named ``<class>-<instance>.png``,
default 70 classes x 20 instances to mirror the reference benchmark size.

    python3 scripts/make_shapes.py --out data/synth
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw


def class_profile(rng: np.random.Generator, harmonics=range(2, 9)):
    amps = {h: rng.uniform(0.02, 0.28 / h**0.5) for h in harmonics}
    phases = {h: rng.uniform(0.0, 2.0 * np.pi) for h in harmonics}
    total = sum(amps.values())
    if total > 0.7:  # keep the radius strictly positive
        amps = {h: a * 0.7 / total for h, a in amps.items()}
    return amps, phases


def instance_polygon(
    rng: np.random.Generator,
    amps: dict[int, float],
    phases: dict[int, float],
    size: int,
    n_vertices: int = 540,
) -> list[tuple[float, float]]:
    theta = 2.0 * np.pi * np.arange(n_vertices) / n_vertices
    r = np.ones(n_vertices)
    for h, a in amps.items():
        jitter = 1.0 + rng.uniform(-0.12, 0.12)
        r += a * jitter * np.cos(h * theta + phases[h] + rng.uniform(-0.1, 0.1))
    r = np.maximum(r, 0.2)
    rot = rng.uniform(0.0, 2.0 * np.pi)
    scale = size * rng.uniform(0.24, 0.36)
    cx = size / 2 + rng.uniform(-0.05, 0.05) * size
    cy = size / 2 + rng.uniform(-0.05, 0.05) * size
    x = cx + scale * r * np.cos(theta + rot)
    y = cy + scale * r * np.sin(theta + rot)
    margin = 2.0
    x = np.clip(x, margin, size - margin)
    y = np.clip(y, margin, size - margin)
    return list(zip(x.tolist(), y.tolist()))


def rasterize(polygon, size: int) -> Image.Image:
    img = Image.new("L", (size, size), 0)
    ImageDraw.Draw(img).polygon(polygon, fill=255)
    return img


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--classes", type=int, default=70)
    ap.add_argument("--per-class", type=int, default=20)
    ap.add_argument("--size", type=int, default=256, help="canvas side in pixels")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    root_rng = np.random.default_rng(args.seed)
    for c in range(args.classes):
        class_rng = np.random.default_rng(root_rng.integers(2**63))
        amps, phases = class_profile(class_rng)
        name = f"synth{c:02d}"
        for i in range(1, args.per_class + 1):
            poly = instance_polygon(class_rng, amps, phases, args.size)
            rasterize(poly, args.size).save(out / f"{name}-{i}.png")
    n = args.classes * args.per_class
    print(f"wrote {n} images ({args.classes} classes x {args.per_class}) to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
