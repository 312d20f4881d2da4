"""Descriptor index: dataset extraction, text persistence, exact k-NN.

On-disk contract (line-oriented UTF-8, ``\\n`` endings)::

    #shapesig v1 kind=<K> n=<N> dim=<D> [af_step=.. tar_step=.. coeffs=..
        threshold=.. orientation_normalize=..]
    <id>,<class>,<v1>,...,<vD>
    ...

Values use 17 significant digits so a save/load round trip is bit exact.
The extraction parameters ride along in the header so a query image can be
reprocessed exactly the way the index was built.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import UnidentifiedImageError

from .contour import binarize
from .errors import (
    DimensionMismatch,
    EmptyDataset,
    FormatError,
    KindMismatch,
    ShapeSigError,
)
from .pipeline import ExtractConfig, descriptor_dim, descriptor_values, load_image, shape_frame
from .signatures import KINDS, SignatureParams

MAGIC = "#shapesig v1"

IMAGE_SUFFIXES = {".gif", ".png", ".pgm", ".ppm", ".bmp", ".jpg", ".jpeg", ".tif", ".tiff"}


@dataclass(frozen=True)
class FeatureIndex:
    """Immutable id-sorted collection of descriptors of one kind."""

    config: ExtractConfig
    ids: np.ndarray      # (n,) unicode
    classes: np.ndarray  # (n,) unicode
    vectors: np.ndarray  # (n, dim) float64

    def __post_init__(self) -> None:
        self.vectors.setflags(write=False)
        self.ids.setflags(write=False)
        self.classes.setflags(write=False)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def kind(self) -> str:
        return self.config.kind

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class RankedResult:
    """Hits as (id, class, distance), ascending distance, ties by id."""

    query_id: str
    hits: list[tuple[str, str, float]]


def class_of(stem: str) -> str:
    """Class label of a file stem: everything before the last hyphen."""
    cls, sep, _ = stem.rpartition("-")
    return cls if sep else stem


def list_dataset(directory: str | os.PathLike) -> list[Path]:
    """Image files of a flat dataset directory, sorted by stem."""
    root = Path(directory)
    files = [p for p in root.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES]
    return sorted(files, key=lambda p: (p.stem, p.name))


def _extract_task(args: tuple[str, ExtractConfig, tuple[str, ...]]):
    """Per-image worker: shared contour, one descriptor per kind."""
    path, base, kinds = args
    stem = Path(path).stem
    values: dict[str, np.ndarray] = {}
    reasons: dict[str, str] = {}
    try:
        mask = binarize(load_image(path), base.threshold)
        points, center = shape_frame(mask, base.samples, base.orientation_normalize)
    except (ShapeSigError, OSError, UnidentifiedImageError) as exc:
        reason = f"{type(exc).__name__}: {exc}"
        return stem, values, {kind: reason for kind in kinds}
    params = SignatureParams(af_step=base.af_step, tar_step=base.tar_step)
    for kind in kinds:
        try:
            values[kind] = descriptor_values(kind, points, center, params, base.coeffs)
        except ShapeSigError as exc:
            reasons[kind] = f"{type(exc).__name__}: {exc}"
    return stem, values, reasons


def _worker_count(n_tasks: int, workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("SHAPESIG_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(workers, n_tasks))


def build_many(
    directory: str | os.PathLike,
    config: ExtractConfig,
    kinds: tuple[str, ...] | None = None,
    workers: int | None = None,
) -> tuple[dict[str, FeatureIndex], dict[str, list[tuple[str, str]]]]:
    """Extract several descriptor kinds in one pass over a dataset.

    The contour work is shared across kinds.  Images that fail (degenerate
    shapes, unreadable files) land in the per-kind skip report instead of
    aborting the build.  Output records are sorted by id regardless of the
    processing schedule; ``SHAPESIG_THREADS`` caps process parallelism.
    """
    kinds = tuple(kinds) if kinds is not None else (config.kind,)
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown descriptor kind {kind!r}")
    files = list_dataset(directory)
    if not files:
        raise EmptyDataset(f"no shape images found under {directory}")

    tasks = []
    skips: dict[str, list[tuple[str, str]]] = {kind: [] for kind in kinds}
    seen: set[str] = set()
    for path in files:
        if path.stem in seen:
            for kind in kinds:
                skips[kind].append((path.stem, f"duplicate id from {path.name}"))
            continue
        seen.add(path.stem)
        tasks.append((str(path), config, kinds))

    n_workers = _worker_count(len(tasks), workers)
    if n_workers == 1:
        results = [_extract_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_extract_task, tasks, chunksize=chunk))

    results.sort(key=lambda r: r[0])
    indexes: dict[str, FeatureIndex] = {}
    for kind in kinds:
        ids, classes, rows = [], [], []
        for stem, values, reasons in results:
            if kind in values:
                ids.append(stem)
                classes.append(class_of(stem))
                rows.append(values[kind])
            else:
                skips[kind].append((stem, reasons[kind]))
        kind_config = replace(config, kind=kind)
        dim = descriptor_dim(kind_config)
        vectors = np.vstack(rows) if rows else np.empty((0, dim), dtype=np.float64)
        skips[kind].sort(key=lambda s: s[0])
        indexes[kind] = FeatureIndex(
            config=kind_config,
            ids=np.array(ids, dtype=str),
            classes=np.array(classes, dtype=str),
            vectors=vectors,
        )
    return indexes, skips


def build_index(
    directory: str | os.PathLike,
    config: ExtractConfig,
    workers: int | None = None,
) -> tuple[FeatureIndex, list[tuple[str, str]]]:
    """Extract one descriptor per image; skips are reported, not fatal."""
    indexes, skips = build_many(directory, config, (config.kind,), workers)
    return indexes[config.kind], skips[config.kind]


def query(
    index: FeatureIndex,
    values: np.ndarray,
    k: int,
    kind: str | None = None,
    query_id: str = "",
) -> RankedResult:
    """Top-k records by Euclidean distance, full scan, ties broken by id."""
    if kind is not None and kind != index.kind:
        raise KindMismatch(f"query kind {kind!r} does not match index kind {index.kind!r}")
    q = np.asarray(values, dtype=np.float64).reshape(-1)
    if q.shape[0] != index.dim:
        raise DimensionMismatch(
            f"query has {q.shape[0]} values, index stores {index.dim}"
        )
    dist = np.sqrt(((index.vectors - q) ** 2).sum(axis=1))
    # primary key distance, secondary key id, independent of record order
    order = np.lexsort((index.ids, dist))[: max(0, k)]
    hits = [
        (str(index.ids[i]), str(index.classes[i]), float(dist[i])) for i in order
    ]
    return RankedResult(query_id=query_id, hits=hits)


def _format_header(index: FeatureIndex) -> str:
    cfg = index.config
    return (
        f"{MAGIC} kind={cfg.kind} n={cfg.samples} dim={index.dim}"
        f" af_step={cfg.af_step} tar_step={cfg.tar_step} coeffs={cfg.coeffs}"
        f" threshold={cfg.threshold:.17g}"
        f" orientation_normalize={int(cfg.orientation_normalize)}"
    )


def save(index: FeatureIndex, path: str | os.PathLike) -> None:
    """Write the line-oriented text format; values keep 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_format_header(index) + "\n")
        for i in range(len(index)):
            row = ",".join(f"{v:.17g}" for v in index.vectors[i])
            fh.write(f"{index.ids[i]},{index.classes[i]},{row}\n")


def load(path: str | os.PathLike) -> FeatureIndex:
    """Parse an index file; raises FormatError on a bad magic line or records."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(MAGIC + " "):
            raise FormatError(f"bad magic line in {path}: {header[:40]!r}")
        fields = {}
        for token in header[len(MAGIC) :].split():
            key, sep, value = token.partition("=")
            if not sep:
                raise FormatError(f"malformed header token {token!r}")
            fields[key] = value
        try:
            kind = fields["kind"]
            n = int(fields["n"])
            dim = int(fields["dim"])
        except KeyError as exc:
            raise FormatError(f"header missing required field {exc}") from exc
        except ValueError as exc:
            raise FormatError(f"non-numeric header field: {exc}") from exc
        try:
            config = ExtractConfig(
                kind=kind,
                samples=n,
                af_step=int(fields.get("af_step", 5)),
                tar_step=int(fields.get("tar_step", 1)),
                coeffs=int(fields.get("coeffs", 0)),
                threshold=float(fields.get("threshold", 0.5)),
                orientation_normalize=bool(int(fields.get("orientation_normalize", 0))),
            )
        except ValueError as exc:
            raise FormatError(f"invalid header parameters: {exc}") from exc

        ids, classes, rows = [], [], []
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2 + dim:
                raise FormatError(
                    f"line {line_no}: expected {2 + dim} fields, got {len(parts)}"
                )
            ids.append(parts[0])
            classes.append(parts[1])
            try:
                rows.append([float(v) for v in parts[2:]])
            except ValueError as exc:
                raise FormatError(f"line {line_no}: bad float: {exc}") from exc

    if len(set(ids)) != len(ids):
        raise FormatError("duplicate record ids")
    order = np.argsort(np.array(ids, dtype=str), kind="stable")
    vectors = (
        np.array(rows, dtype=np.float64)[order]
        if rows
        else np.empty((0, dim), dtype=np.float64)
    )
    return FeatureIndex(
        config=config,
        ids=np.array(ids, dtype=str)[order],
        classes=np.array(classes, dtype=str)[order],
        vectors=vectors,
    )
